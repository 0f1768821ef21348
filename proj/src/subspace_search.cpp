#include "exphull/subspace_search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "exphull/errors.hpp"
#include "exphull/verdict.hpp"

namespace exphull {

namespace {
std::atomic<int> g_threads{1};
}

void set_search_threads(int n) { g_threads.store(std::max(1, n)); }
int search_threads() { return g_threads.load(); }

std::vector<std::vector<long>> primitive_vectors(int dim, long height) {
    std::vector<std::vector<long>> out;
    std::vector<long> v(dim, -height);
    if (dim == 0) return out;
    for (;;) {
        // lex positivity: first nonzero entry positive
        long first = 0;
        for (long x : v)
            if (x != 0) { first = x; break; }
        if (first > 0) {
            long g = 0;
            for (long x : v) g = std::gcd(g, std::abs(x));
            if (g == 1) out.push_back(v);
        }
        int i = dim - 1;
        while (i >= 0 && v[i] == height) v[i--] = -height;
        if (i < 0) break;
        ++v[i];
    }
    std::sort(out.begin(), out.end(), [](const std::vector<long>& a, const std::vector<long>& b) {
        long sa = 0, sb = 0;
        for (long x : a) sa += std::abs(x);
        for (long x : b) sb += std::abs(x);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

namespace {

QMatrix row_to_qmatrix(const std::vector<long>& v) {
    std::vector<Rational> r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return QMatrix::from_rows({r});
}

// Residue of v modulo the row space of rref (a reduced echelon basis):
// subtracts the pivot-matched multiples. Zero residue means membership.
std::vector<Rational> reduce_by_rref(std::vector<Rational> v, const QMatrix& rref,
                                     const std::vector<int>& pivots) {
    for (int i = 0; i < rref.rows(); ++i) {
        const Rational& c = v[pivots[i]];
        if (c == 0) continue;
        Rational f = c; // rref pivots are 1
        for (int j = 0; j < rref.cols(); ++j)
            if (rref.at(i, j) != 0) v[j] -= f * rref.at(i, j);
    }
    return v;
}

std::vector<int> pivot_columns(const QMatrix& rref) {
    std::vector<int> pivots;
    for (int i = 0; i < rref.rows(); ++i)
        for (int j = 0; j < rref.cols(); ++j)
            if (rref.at(i, j) != 0) { pivots.push_back(j); break; }
    return pivots;
}

std::string residue_key(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& q : v) {
        s += q.get_str();
        s += ',';
    }
    return s;
}

} // namespace

SubspaceExtender::SubspaceExtender(QMatrix base, std::vector<std::vector<long>> family,
                                   std::optional<QMatrix> within)
    : base_(base.rref()), within_(std::move(within)) {
    // reduce the family modulo the base and deduplicate by the residue line;
    // any representative spans the same extension, so keep the first
    auto pivots = pivot_columns(base_);
    std::set<std::string> seen_lines;
    for (auto& v : family) {
        std::vector<Rational> r(v.begin(), v.end());
        if (within_ && !in_rowspace(r, *within_)) continue;
        std::vector<Rational> res = reduce_by_rref(r, base_, pivots);
        bool zero = std::all_of(res.begin(), res.end(), [](const Rational& q) { return q == 0; });
        if (zero) continue;
        auto prim = primitive_integer_row(res);
        std::vector<Rational> line(prim.begin(), prim.end());
        if (!seen_lines.insert(residue_key(line)).second) continue;
        family_.push_back(v);
    }
    seen_.insert(base_.rowspace_key());
    level_.push_back({QMatrix(0, base_.cols()), base_, base_.rowspace_key()});
    levels_ = 0;
}

bool SubspaceExtender::advance() {
    std::vector<Node> next;
    for (const auto& node : level_) {
        for (const auto& v : family_) {
            std::vector<Rational> r(v.begin(), v.end());
            if (in_rowspace(r, node.span)) continue;
            QMatrix vm = row_to_qmatrix(v);
            QMatrix span = node.span.stack(vm);
            std::string key = span.rowspace_key();
            if (!seen_.insert(key).second) continue;
            next.push_back({node.added.stack(vm), span, key});
        }
    }
    level_ = std::move(next);
    ++levels_;
    return !level_.empty();
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    int threads = search_threads();
    if (threads <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::optional<size_t> first_matching(size_t count, const std::function<bool(size_t)>& pred) {
    int threads = search_threads();
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i)
            if (pred(i)) return i;
        return std::nullopt;
    }
    size_t chunk = static_cast<size_t>(threads) * 4;
    for (size_t start = 0; start < count; start += chunk) {
        size_t end = std::min(count, start + chunk);
        std::vector<char> hit(end - start, 0);
        std::atomic<size_t> cursor{start};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= end) return;
                    try {
                        if (pred(i)) hit[i - start] = 1;
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
        for (size_t i = start; i < end; ++i)
            if (hit[i - start]) return i;
    }
    return std::nullopt;
}

} // namespace exphull

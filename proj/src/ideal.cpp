#include "exphull/ideal.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "exphull/errors.hpp"

namespace exphull {

namespace {

std::atomic<long> g_budget{1000000};

long block_degree(const ExpVec& e, int from, int to) {
    long d = 0;
    for (int i = from; i < to; ++i) d += e[i];
    return d;
}

int revlex_cmp(const ExpVec& a, const ExpVec& b, int from, int to) {
    // a > b in revlex iff the last differing coordinate of a-b is negative
    for (int i = to - 1; i >= from; --i) {
        if (a[i] == b[i]) continue;
        return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

int degrevlex_cmp(const ExpVec& a, const ExpVec& b, int from, int to) {
    long da = block_degree(a, from, to), db = block_degree(b, from, to);
    if (da != db) return da > db ? 1 : -1;
    return revlex_cmp(a, b, from, to);
}

} // namespace

int TermOrder::compare(const ExpVec& a, const ExpVec& b) const {
    int n = static_cast<int>(a.size());
    switch (kind) {
    case Lex:
        for (int i = 0; i < n; ++i) {
            if (a[i] == b[i]) continue;
            return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    case DegRevLex:
        return degrevlex_cmp(a, b, 0, n);
    case Elim: {
        int c = degrevlex_cmp(a, b, 0, elim_block);
        if (c != 0) return c;
        return degrevlex_cmp(a, b, elim_block, n);
    }
    }
    return 0;
}

std::string TermOrder::tag() const {
    switch (kind) {
    case Lex: return "lex";
    case DegRevLex: return "degrevlex";
    case Elim: return "elim" + std::to_string(elim_block);
    }
    return "?";
}

void set_groebner_budget(long steps) { g_budget.store(steps); }
long groebner_budget() { return g_budget.load(); }

namespace {

struct OrderCmpDesc {
    const TermOrder* order;
    bool operator()(const ExpVec& a, const ExpVec& b) const { return order->compare(a, b) > 0; }
};

using WorkPoly = std::map<ExpVec, Rational, OrderCmpDesc>; // leading term first

WorkPoly to_work(const LaurentPoly& p, const TermOrder& order) {
    WorkPoly w{OrderCmpDesc{&order}};
    for (const auto& [e, c] : p.terms()) w.emplace(e, c);
    return w;
}

LaurentPoly from_work(const WorkPoly& w, const std::vector<std::string>& vars) {
    LaurentPoly p(vars);
    for (const auto& [e, c] : w) p.add_term(e, c);
    return p;
}

bool divides(const ExpVec& a, const ExpVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

ExpVec exp_sub(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ExpVec exp_lcm(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

long exp_deg(const ExpVec& e) { return std::accumulate(e.begin(), e.end(), 0L); }

struct BudgetCounter {
    long used = 0;
    void step() {
        if (++used > g_budget.load()) throw ResourceLimitError("groebner reduction budget exceeded");
    }
};

// subtract c * x^shift * g from w
void axpy(WorkPoly& w, const Rational& c, const ExpVec& shift, const WorkPoly& g) {
    for (const auto& [e, gc] : g) {
        ExpVec ne(e.size());
        for (size_t i = 0; i < e.size(); ++i) ne[i] = e[i] + shift[i];
        auto it = w.find(ne);
        if (it == w.end()) {
            Rational v = -c * gc;
            if (v != 0) w.emplace(std::move(ne), std::move(v));
        } else {
            it->second -= c * gc;
            if (it->second == 0) w.erase(it);
        }
    }
}

// Full normal form of w modulo basis (every term reduced).
void normal_form_inplace(WorkPoly& w, const std::vector<WorkPoly>& basis, BudgetCounter& budget) {
    auto pos = w.begin();
    while (pos != w.end()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.empty()) continue;
            const auto& glt = *g.begin();
            if (!divides(glt.first, pos->first)) continue;
            budget.step();
            Rational c = pos->second / glt.second;
            ExpVec shift = exp_sub(pos->first, glt.first);
            axpy(w, c, shift, g);
            reduced = true;
            break;
        }
        if (reduced)
            pos = w.begin(); // restart from the top; cheap at these sizes
        else
            ++pos;
    }
}

struct SPair {
    long sugar;
    ExpVec lcm;
    int i, j;
};

struct SPairCmp {
    const TermOrder* order;
    bool operator()(const SPair& a, const SPair& b) const {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = order->compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

} // namespace

std::vector<LaurentPoly> buchberger(const std::vector<LaurentPoly>& gens, const TermOrder& order) {
    if (gens.empty()) return {};
    const auto& vars = gens[0].vars();
    for (const auto& g : gens) {
        if (g.vars() != vars) throw DomainError("generators from different rings");
        if (!g.is_polynomial()) throw DomainError("buchberger requires nonnegative exponents");
    }

    BudgetCounter budget;
    std::vector<WorkPoly> basis;
    std::vector<long> sugar;
    std::set<SPair, SPairCmp> queue{SPairCmp{&order}};
    std::set<std::pair<int, int>> treated;

    auto push_poly = [&](WorkPoly w, long sug) {
        if (w.empty()) return;
        int k = static_cast<int>(basis.size());
        for (int i = 0; i < k; ++i) {
            if (basis[i].empty()) continue;
            const ExpVec& lti = basis[i].begin()->first;
            const ExpVec& ltk = w.begin()->first;
            ExpVec l = exp_lcm(lti, ltk);
            // product criterion: coprime leading terms give a reducible S-pair
            if (exp_deg(l) == exp_deg(lti) + exp_deg(ltk)) {
                treated.insert({i, k});
                continue;
            }
            long s = std::max(sugar[i] + exp_deg(l) - exp_deg(lti), sug + exp_deg(l) - exp_deg(ltk));
            queue.insert({s, l, i, k});
        }
        basis.push_back(std::move(w));
        sugar.push_back(sug);
    };

    for (const auto& g : gens) {
        WorkPoly w = to_work(g, order);
        if (w.empty()) continue;
        long sug = 0;
        for (const auto& [e, c] : w) {
            (void)c;
            sug = std::max(sug, exp_deg(e));
        }
        push_poly(std::move(w), sug);
    }

    while (!queue.empty()) {
        SPair p = *queue.begin();
        queue.erase(queue.begin());
        treated.insert({p.i, p.j});
        // chain criterion
        bool skip = false;
        for (int k = 0; k < static_cast<int>(basis.size()) && !skip; ++k) {
            if (k == p.i || k == p.j || basis[k].empty()) continue;
            if (!divides(basis[k].begin()->first, p.lcm)) continue;
            auto key1 = std::minmax(p.i, k);
            auto key2 = std::minmax(p.j, k);
            if (treated.count({key1.first, key1.second}) && treated.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        const WorkPoly& f = basis[p.i];
        const WorkPoly& g = basis[p.j];
        if (f.empty() || g.empty()) continue;
        const auto& fl = *f.begin();
        const auto& gl = *g.begin();
        WorkPoly s{OrderCmpDesc{&order}};
        axpy(s, Rational(-1) / fl.second, exp_sub(p.lcm, fl.first), f);
        axpy(s, Rational(1) / gl.second, exp_sub(p.lcm, gl.first), g);
        normal_form_inplace(s, basis, budget);
        if (!s.empty()) push_poly(std::move(s), std::max(sugar[p.i], sugar[p.j]) +
                                                    exp_deg(p.lcm) - std::max(exp_deg(fl.first), exp_deg(gl.first)));
    }

    // inter-reduce to the reduced basis: drop redundant leading terms, then
    // fully reduce each element against the others and normalise monic.
    std::vector<WorkPoly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].empty()) continue;
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j || basis[j].empty()) continue;
            if (divides(basis[j].begin()->first, basis[i].begin()->first) &&
                !(j > i && basis[j].begin()->first == basis[i].begin()->first))
                redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            WorkPoly w = minimal[i];
            std::vector<WorkPoly> others;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            normal_form_inplace(w, others, budget);
            if (!(w == minimal[i])) {
                minimal[i] = std::move(w);
                changed = true;
            }
        }
        minimal.erase(std::remove_if(minimal.begin(), minimal.end(),
                                     [](const WorkPoly& w) { return w.empty(); }),
                      minimal.end());
    }
    std::vector<LaurentPoly> out;
    const std::vector<std::string>& vs = vars;
    for (auto& w : minimal) {
        Rational lead = w.begin()->second;
        WorkPoly monic{OrderCmpDesc{&order}};
        for (const auto& [e, c] : w) monic.emplace(e, c / lead);
        out.push_back(from_work(monic, vs));
    }
    std::sort(out.begin(), out.end(), [&](const LaurentPoly& a, const LaurentPoly& b) {
        WorkPoly wa = to_work(a, order), wb = to_work(b, order);
        return order.compare(wa.begin()->first, wb.begin()->first) < 0;
    });
    return out;
}

LaurentPoly reduce_modulo(const LaurentPoly& p, const std::vector<LaurentPoly>& basis,
                          const TermOrder& order) {
    if (!p.is_polynomial()) throw DomainError("reduce_modulo requires nonnegative exponents");
    BudgetCounter budget;
    std::vector<WorkPoly> wb;
    for (const auto& g : basis) wb.push_back(to_work(g, order));
    WorkPoly w = to_work(p, order);
    normal_form_inplace(w, wb, budget);
    return from_work(w, p.vars());
}

// ---------------------------------------------------------------------------
// Ideal
// ---------------------------------------------------------------------------

struct Ideal::Cache {
    std::mutex mutex;
    std::map<std::string, std::vector<LaurentPoly>> bases; // keyed by order tag
    std::optional<std::vector<LaurentPoly>> sat_gens;
    std::optional<std::optional<int>> dim;
};

namespace {

// Clears Laurent generators to polynomials: negative exponents may only be
// shifted away on inverted variables.
LaurentPoly clear_generator(const LaurentPoly& g, const std::vector<std::string>& vars,
                            const std::set<std::string>& inverted) {
    ExpVec shift(vars.size(), 0);
    bool need = false;
    for (size_t i = 0; i < vars.size(); ++i) {
        long m = g.min_exponent(static_cast<int>(i));
        if (m < 0) {
            if (!inverted.count(vars[i]))
                throw DomainError("negative exponent on non-inverted variable " + vars[i]);
            shift[i] = -m;
            need = true;
        }
    }
    return need ? g.shift(shift) : g;
}

LaurentPoly permute_vars(const LaurentPoly& p, const std::vector<int>& where,
                         const std::vector<std::string>& new_vars) {
    LaurentPoly out(new_vars);
    for (const auto& [e, c] : p.terms()) {
        ExpVec ne(new_vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

} // namespace

Ideal::Ideal(std::vector<std::string> vars, std::vector<LaurentPoly> gens,
             std::set<std::string> inverted)
    : vars_(std::move(vars)), inverted_(std::move(inverted)), cache_(std::make_shared<Cache>()) {
    for (const auto& v : inverted_)
        if (std::find(vars_.begin(), vars_.end(), v) == vars_.end())
            throw DomainError("inverted variable " + v + " not in ring");
    for (auto& g : gens) {
        if (g.vars() != vars_) g = g.align_to(vars_);
        LaurentPoly cleared = clear_generator(g, vars_, inverted_);
        if (!cleared.is_zero()) gens_.push_back(std::move(cleared));
    }
}

bool Ideal::is_inverted(int var) const { return inverted_.count(vars_[var]) > 0; }

const std::vector<LaurentPoly>& Ideal::saturated_gens() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->sat_gens) return *cache_->sat_gens;
    if (inverted_.empty() || gens_.empty()) {
        cache_->sat_gens = gens_;
        return *cache_->sat_gens;
    }
    // saturate by the product of inverted variables: adjoin t*prod - 1 and
    // eliminate t
    std::vector<std::string> ext = {"_sat"};
    ext.insert(ext.end(), vars_.begin(), vars_.end());
    std::vector<LaurentPoly> egens;
    for (const auto& g : gens_) egens.push_back(g.align_to(ext));
    ExpVec prod(ext.size(), 0);
    prod[0] = 1;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (inverted_.count(vars_[i])) prod[i + 1] = 1;
    LaurentPoly t_rel = LaurentPoly::monomial(ext, prod, Rational(1)) -
                        LaurentPoly::constant(ext, Rational(1));
    egens.push_back(t_rel);
    auto gb = buchberger(egens, TermOrder::elim(1));
    std::vector<LaurentPoly> sat;
    for (const auto& g : gb)
        if (!g.depends_on(0)) {
            LaurentPoly trimmed(vars_);
            for (const auto& [e, c] : g.terms()) {
                ExpVec ne(e.begin() + 1, e.end());
                trimmed.add_term(ne, c);
            }
            if (!trimmed.is_zero()) sat.push_back(std::move(trimmed));
        }
    cache_->sat_gens = std::move(sat);
    return *cache_->sat_gens;
}

const std::vector<LaurentPoly>& Ideal::basis(const TermOrder& order) const {
    const auto& sat = saturated_gens();
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->bases.find(order.tag());
    if (it != cache_->bases.end()) return it->second;
    auto gb = buchberger(sat, order);
    return cache_->bases.emplace(order.tag(), std::move(gb)).first->second;
}

Ideal Ideal::groebner(const TermOrder& order) const {
    basis(order);
    return *this;
}

LaurentPoly Ideal::normal_form(const LaurentPoly& p, const TermOrder& order) const {
    LaurentPoly q = p.vars() == vars_ ? p : p.align_to(vars_);
    q = clear_generator(q, vars_, inverted_);
    return reduce_modulo(q, basis(order), order);
}

bool Ideal::contains(const LaurentPoly& p) const {
    if (p.is_zero()) return true;
    return normal_form(p).is_zero();
}

bool Ideal::is_proper() const {
    const auto& b = basis();
    return !(b.size() == 1 && b[0].is_constant());
}

std::optional<int> Ideal::dimension() const {
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (cache_->dim) return *cache_->dim;
    }
    std::optional<int> result;
    const auto& b = basis();
    if (b.size() == 1 && b[0].is_constant()) {
        result = std::nullopt;
    } else {
        // maximal independent variable sets modulo the leading-term ideal
        int n = static_cast<int>(vars_.size());
        std::vector<uint64_t> lt_support;
        for (const auto& g : b) {
            if (g.is_zero()) continue;
            // leading term under degrevlex = basis order used here
            TermOrder ord = TermOrder::degrevlex();
            const ExpVec* lead = nullptr;
            for (const auto& [e, c] : g.terms()) {
                (void)c;
                if (!lead || ord.compare(e, *lead) > 0) lead = &e;
            }
            uint64_t mask = 0;
            for (int i = 0; i < n; ++i)
                if ((*lead)[i] != 0) mask |= (uint64_t{1} << i);
            lt_support.push_back(mask);
        }
        int best = 0;
        // depth-first over variable subsets with pruning
        std::function<void(int, uint64_t, int)> dfs = [&](int var, uint64_t chosen, int count) {
            best = std::max(best, count);
            if (var >= n) return;
            if (count + (n - var) <= best) return;
            // try including var
            uint64_t with = chosen | (uint64_t{1} << var);
            bool ok = true;
            for (uint64_t s : lt_support)
                if (s != 0 && (s & ~with) == 0) { ok = false; break; }
            if (ok) dfs(var + 1, with, count + 1);
            dfs(var + 1, chosen, count);
        };
        // a leading term that is a nonzero constant cannot happen here (unit
        // ideal was handled above); supports of constants would be 0
        dfs(0, 0, 0);
        result = best;
    }
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->dim = result;
    return result;
}

Ideal Ideal::eliminate(const std::vector<std::string>& keep) const {
    for (const auto& k : keep)
        if (std::find(vars_.begin(), vars_.end(), k) == vars_.end())
            throw DomainError("eliminate: unknown variable " + k);
    // order: eliminated block first, then kept block (in keep order)
    std::vector<std::string> elim_vars;
    for (const auto& v : vars_)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) elim_vars.push_back(v);
    std::vector<std::string> nv = elim_vars;
    nv.insert(nv.end(), keep.begin(), keep.end());
    std::vector<int> where(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i)
        where[i] = static_cast<int>(std::find(nv.begin(), nv.end(), vars_[i]) - nv.begin());

    std::vector<LaurentPoly> pg;
    for (const auto& g : saturated_gens()) pg.push_back(permute_vars(g, where, nv));
    auto gb = buchberger(pg, TermOrder::elim(static_cast<int>(elim_vars.size())));

    std::vector<LaurentPoly> kept;
    int ne = static_cast<int>(elim_vars.size());
    for (const auto& g : gb) {
        bool pure = true;
        for (int i = 0; i < ne && pure; ++i)
            if (g.depends_on(i)) pure = false;
        if (!pure) continue;
        LaurentPoly trimmed{keep};
        for (const auto& [e, c] : g.terms()) {
            ExpVec nexp(e.begin() + ne, e.end());
            trimmed.add_term(nexp, c);
        }
        kept.push_back(std::move(trimmed));
    }
    std::set<std::string> inv;
    for (const auto& v : keep)
        if (inverted_.count(v)) inv.insert(v);
    return Ideal(keep, kept, inv);
}

bool Ideal::same_ideal(const Ideal& other) const {
    if (vars_ != other.vars_) return false;
    for (const auto& g : other.saturated_gens())
        if (!contains(g)) return false;
    for (const auto& g : saturated_gens())
        if (!other.contains(g)) return false;
    return true;
}

} // namespace exphull

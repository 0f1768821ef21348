#include "exphull/intmat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "exphull/errors.hpp"

namespace exphull {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw DomainError("empty rational literal");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return make_rational(Integer(t), Integer(1));
        return make_rational(Integer(t.substr(0, slash)), Integer(t.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational literal '" + text + "'");
    }
}

Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0 && e < 0) throw DomainError("negative power of zero");
    Rational base = e > 0 ? q : Rational(1) / q;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational out(1);
    while (n) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

Integer common_denominator(const std::vector<Rational>& qs) {
    Integer l(1);
    for (const auto& q : qs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    return l;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw DomainError("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_long_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Integer>> zr;
    for (const auto& r : rows) zr.emplace_back(r.begin(), r.end());
    return from_rows(zr);
}

std::vector<Integer> IntMatrix::row(int i) const {
    std::vector<Integer> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) p.at(i, j) += at(i, k) * o.at(k, j);
        }
    return p;
}

int IntMatrix::rank() const {
    const IntMatrix h = hermite(*this).h;
    int r = 0;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { ++r; break; }
    return r;
}

bool IntMatrix::is_unimodular() const {
    if (rows_ != cols_) return false;
    // determinant via fraction-free elimination on a copy
    IntMatrix m = *this;
    Integer det(1);
    int sign = 1;
    Integer prev(1);
    int n = rows_;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return false;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Integer t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    det = n == 0 ? Integer(1) : m.at(n - 1, n - 1) * sign;
    return det == 1 || det == -1;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

BezoutResult bezout(const Integer& a, const Integer& b) {
    Integer g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    // mpz_gcdext returns g >= 0 already; re-verify the identity in test builds
    assert(u * a + v * b == g);
    return {g, u, v};
}

HermiteResult hermite(const IntMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(rows);

    auto row_combine = [&](int i, int k, const Integer& p, const Integer& q,
                           const Integer& r, const Integer& s) {
        // (row_i, row_k) <- (p*row_i + q*row_k, r*row_i + s*row_k)
        for (int j = 0; j < cols; ++j) {
            Integer a = h.at(i, j), b = h.at(k, j);
            h.at(i, j) = p * a + q * b;
            h.at(k, j) = r * a + s * b;
        }
        for (int j = 0; j < rows; ++j) {
            Integer a = u.at(i, j), b = u.at(k, j);
            u.at(i, j) = p * a + q * b;
            u.at(k, j) = r * a + s * b;
        }
    };

    int pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < rows; ++col) {
        // clear below using extended gcd steps
        for (int i = pivot_row + 1; i < rows; ++i) {
            if (h.at(i, col) == 0) continue;
            if (h.at(pivot_row, col) == 0) {
                row_combine(pivot_row, i, 0, 1, 1, 0); // swap
                continue;
            }
            auto bz = bezout(h.at(pivot_row, col), h.at(i, col));
            Integer a = h.at(pivot_row, col) / bz.g, b = h.at(i, col) / bz.g;
            row_combine(pivot_row, i, bz.u, bz.v, -b, a);
        }
        if (h.at(pivot_row, col) == 0) continue;
        if (h.at(pivot_row, col) < 0) row_combine(pivot_row, pivot_row, -1, 0, 0, -1);
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < pivot_row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(pivot_row, col).get_mpz_t());
            if (q == 0) continue;
            for (int j = 0; j < cols; ++j) h.at(i, j) -= q * h.at(pivot_row, j);
            for (int j = 0; j < rows; ++j) u.at(i, j) -= q * u.at(pivot_row, j);
        }
        ++pivot_row;
    }
    return {h, u};
}

SmithResult smith(const IntMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto row_combine = [&](int i, int k, const Integer& p, const Integer& q,
                           const Integer& r, const Integer& t) {
        for (int j = 0; j < cols; ++j) {
            Integer a = s.at(i, j), b = s.at(k, j);
            s.at(i, j) = p * a + q * b;
            s.at(k, j) = r * a + t * b;
        }
        for (int j = 0; j < rows; ++j) {
            Integer a = u.at(i, j), b = u.at(k, j);
            u.at(i, j) = p * a + q * b;
            u.at(k, j) = r * a + t * b;
        }
    };
    auto col_combine = [&](int j, int k, const Integer& p, const Integer& q,
                           const Integer& r, const Integer& t) {
        for (int i = 0; i < rows; ++i) {
            Integer a = s.at(i, j), b = s.at(i, k);
            s.at(i, j) = p * a + q * b;
            s.at(i, k) = r * a + t * b;
        }
        for (int i = 0; i < cols; ++i) {
            Integer a = v.at(i, j), b = v.at(i, k);
            v.at(i, j) = p * a + q * b;
            v.at(i, k) = r * a + t * b;
        }
    };

    auto negate_row = [&](int i) {
        for (int j = 0; j < cols; ++j) s.at(i, j) = -s.at(i, j);
        for (int j = 0; j < rows; ++j) u.at(i, j) = -u.at(i, j);
    };

    // Reduce-by-minimum: each round either clears the pivot row/column or
    // strictly shrinks |pivot|, so every diagonal step terminates.
    int n = std::min(rows, cols);
    for (int k = 0; k < n; ++k) {
        for (;;) {
            // move the minimal nonzero |entry| of the trailing block to (k,k)
            int pi = -1, pj = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j) {
                    if (s.at(i, j) == 0) continue;
                    if (pi < 0 || abs(s.at(i, j)) < abs(s.at(pi, pj))) { pi = i; pj = j; }
                }
            if (pi < 0) { pi = -2; break; } // trailing block is zero
            if (pi != k) row_combine(k, pi, 0, 1, 1, 0);
            if (pj != k) col_combine(k, pj, 0, 1, 1, 0);

            bool dirty = false;
            for (int i = k + 1; i < rows; ++i) {
                if (s.at(i, k) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), s.at(i, k).get_mpz_t(), s.at(k, k).get_mpz_t());
                row_combine(k, i, 1, 0, -q, 1);
                if (s.at(i, k) != 0) dirty = true; // remainder smaller than pivot
            }
            for (int j = k + 1; j < cols; ++j) {
                if (s.at(k, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), s.at(k, j).get_mpz_t(), s.at(k, k).get_mpz_t());
                col_combine(k, j, 1, 0, -q, 1);
                if (s.at(k, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // pivot row/column clear; enforce d_k | trailing block
            bool fixed = false;
            for (int i = k + 1; i < rows && !fixed; ++i)
                for (int j = k + 1; j < cols && !fixed; ++j)
                    if (s.at(i, j) % s.at(k, k) != 0) {
                        row_combine(k, i, 1, 1, 0, 1); // pulls a non-multiple into row k
                        fixed = true;
                    }
            if (!fixed) break;
        }
        bool trailing_zero = true;
        for (int i = k; i < rows && trailing_zero; ++i)
            for (int j = k; j < cols; ++j)
                if (s.at(i, j) != 0) { trailing_zero = false; break; }
        if (trailing_zero) break;
        if (s.at(k, k) < 0) negate_row(k);
    }
    return {s, u, v};
}

IntMatrix integer_kernel(const IntMatrix& m) {
    // Columns v with m v = 0: from Smith form m = U^-1 S V^-1, kernel basis =
    // columns of V corresponding to zero diagonal entries of S.
    auto sm = smith(m);
    std::vector<int> zero_cols;
    int n = m.cols();
    for (int j = 0; j < n; ++j) {
        bool zero = true;
        for (int i = 0; i < sm.s.rows(); ++i)
            if (sm.s.at(i, j) != 0) { zero = false; break; }
        if (zero) zero_cols.push_back(j);
    }
    IntMatrix k(n, static_cast<int>(zero_cols.size()));
    for (size_t t = 0; t < zero_cols.size(); ++t)
        for (int i = 0; i < n; ++i) k.at(i, static_cast<int>(t)) = sm.v.at(i, zero_cols[t]);
    return k;
}

IntMatrix row_saturation(const IntMatrix& m) {
    // sat(rowspace) = kernel of (kernel of m as rows); double dual. The
    // result is put in Hermite form (positive pivots) for canonicity.
    IntMatrix k = integer_kernel(m);              // cols span {v : m v = 0}
    IntMatrix k2 = integer_kernel(k.transpose()); // cols span {w : k^T w = 0}
    IntMatrix h = hermite(k2.transpose()).h;
    std::vector<std::vector<Integer>> rows;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { rows.push_back(h.row(i)); break; }
    if (rows.empty()) return IntMatrix(0, m.cols());
    return IntMatrix::from_rows(rows);
}

IntMatrix rowspace_canonical(const IntMatrix& m) { return row_saturation(m); }

IntMatrix complete_to_unimodular(const IntMatrix& s) {
    // Smith: U s V = D with D = [I_r | 0] for a saturated primitive basis,
    // so s = U^-1 [I 0] V^-1 and the first r rows of V^-1 span the same
    // lattice as the rows of s. V^-1 is the completion.
    auto sm = smith(s);
    for (int i = 0; i < s.rows(); ++i)
        if (sm.s.at(i, i) != 1)
            throw DomainError("lattice basis not primitive/saturated");
    auto hr = hermite(sm.v); // W V = I for unimodular V, so W = V^-1
    if (!(hr.h == IntMatrix::identity(sm.v.rows())))
        throw DomainError("failed to invert unimodular matrix");
    return hr.u;
}

std::vector<Integer> primitive_vector(std::vector<Integer> v) {
    Integer g(0);
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return v;
    for (auto& x : v) x /= g;
    for (const auto& x : v) {
        if (x > 0) break;
        if (x < 0) {
            for (auto& y : v) y = -y;
            break;
        }
    }
    return v;
}

} // namespace exphull

#include "exphull/case2.hpp"

#include <algorithm>
#include <set>

#include "exphull/errors.hpp"

namespace exphull {

FunctionalEquation make_equation(LaurentPoly p, QMatrix n_matrix, std::vector<Scalar> gamma,
                                 Scalar beta, Scalar xi, std::vector<Rational> u) {
    int ny = p.nvars() - 1;
    if (ny < 0) throw ValidationError("equation polynomial needs X1 and the torus variables");
    if (n_matrix.rows() != ny || n_matrix.cols() != ny)
        throw ValidationError("N must be square of size n-1");
    if (static_cast<int>(gamma.size()) != ny) throw ValidationError("one gamma per torus variable");
    if (static_cast<int>(u.size()) != ny) throw ValidationError("one u entry per torus variable");
    if (p.is_zero() || !p.depends_on(0))
        throw ValidationError("p must depend on X1");
    if (p.min_exponent(0) < 0) throw ValidationError("p must be polynomial in X1");
    // monomials are units of the Laurent ring, so divisibility by a torus
    // monomial never obstructs minimality; p is kept exactly as given
    FunctionalEquation eq;
    eq.p = std::move(p);
    eq.n_matrix = std::move(n_matrix);
    eq.gamma = std::move(gamma);
    eq.beta = std::move(beta);
    eq.xi = std::move(xi);
    eq.u = std::move(u);
    return eq;
}

SupportData support(const LaurentPoly& p) {
    if (p.is_zero()) throw DomainError("support of the zero polynomial");
    int ny = p.nvars() - 1;
    std::vector<std::string> xvar = {p.vars()[0]};
    std::map<ExpVec, LaurentPoly> coeffs;
    for (const auto& [e, c] : p.terms()) {
        ExpVec ye(e.begin() + 1, e.end());
        auto it = coeffs.find(ye);
        if (it == coeffs.end()) it = coeffs.emplace(ye, LaurentPoly(xvar)).first;
        it->second.add_term(ExpVec{e[0]}, c);
    }
    SupportData s;
    for (auto& [e, c] : coeffs) {
        s.exponents.push_back(e);
        s.coeffs.push_back(c);
    }
    (void)ny;
    return s;
}

std::optional<PermutationSolution> solve_permutation(const SupportData& s, const QMatrix& n_matrix) {
    int h = s.h();
    if (h == 0) return std::nullopt;
    int ny = static_cast<int>(s.exponents[0].size());
    // centroid identity: mu permutes S, so summing N s = mu(s) + u over S
    // forces u = N c - c for the centroid c
    std::vector<Rational> c(ny, Rational(0));
    for (const auto& e : s.exponents)
        for (int j = 0; j < ny; ++j) c[j] += Rational(e[j]);
    for (auto& x : c) x /= h;
    std::vector<Rational> u = n_matrix.apply(c);
    for (int j = 0; j < ny; ++j) u[j] -= c[j];

    std::vector<int> perm(h, -1);
    std::vector<bool> taken(h, false);
    for (int i = 0; i < h; ++i) {
        std::vector<Rational> img(ny);
        std::vector<Rational> se(s.exponents[i].begin(), s.exponents[i].end());
        img = n_matrix.apply(se);
        for (int j = 0; j < ny; ++j) img[j] -= u[j];
        // find img in the support
        ExpVec target(ny);
        bool integral = true;
        for (int j = 0; j < ny; ++j) {
            if (!is_integer(img[j])) { integral = false; break; }
            target[j] = static_cast<long>(img[j].get_num().get_si());
        }
        if (!integral) return std::nullopt;
        auto it = std::lower_bound(s.exponents.begin(), s.exponents.end(), target);
        if (it == s.exponents.end() || *it != target) return std::nullopt;
        int idx = static_cast<int>(it - s.exponents.begin());
        if (taken[idx]) return std::nullopt;
        taken[idx] = true;
        perm[i] = idx;
    }
    return PermutationSolution{perm, u};
}

IterationResult iterate_relation(const QMatrix& n_matrix, const std::vector<Rational>& u,
                                 const Integer& r) {
    if (r < 1) throw DomainError("iterate_relation requires r >= 1");
    // N^r by fast exponentiation; the geometric sum via the cocycle
    // G_{a+b} = G_b + N^b G_a with G_1 = I
    int ny = n_matrix.rows();
    QMatrix npow = QMatrix::identity(ny); // N^0
    QMatrix gsum(ny, ny);                 // G_0 = 0
    QMatrix base = n_matrix;
    QMatrix base_gsum = QMatrix::identity(ny); // G_1 = I
    Integer e = r;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            // (npow, gsum) <- composition with (base, base_gsum)
            gsum = base_gsum.add(base.mul(gsum));
            npow = base.mul(npow);
        }
        e >>= 1;
        if (e > 0) {
            base_gsum = base_gsum.add(base.mul(base_gsum));
            base = base.mul(base);
        }
    }
    IterationResult out;
    out.n_power = npow;
    out.u_sum = gsum.apply(u);
    return out;
}

namespace {

// Scalars become fresh trailing variables of the expansion ring.
struct ScalarRing {
    std::vector<std::string> vars;
    std::map<std::string, int> symbol_index;

    LaurentPoly value(const Scalar& s) const {
        if (std::holds_alternative<Rational>(s))
            return LaurentPoly::constant(vars, std::get<Rational>(s));
        return LaurentPoly::variable(vars, symbol_index.at(std::get<std::string>(s)));
    }
};

Integer factorial(int h) {
    Integer f(1);
    for (int i = 2; i <= h; ++i) f *= i;
    return f;
}

} // namespace

bool verify_equation(const FunctionalEquation& eq) {
    const auto& p = eq.p;
    int ny = p.nvars() - 1;
    // rescale exponent denominators: Y_j = Z_j^m clears N s and u
    std::vector<Rational> denominators = eq.u;
    auto s = support(p);
    for (const auto& e : s.exponents) {
        std::vector<Rational> se(e.begin(), e.end());
        auto img = eq.n_matrix.apply(se);
        denominators.insert(denominators.end(), img.begin(), img.end());
    }
    long m = static_cast<long>(common_denominator(denominators).get_si());

    // expansion ring: X1, Z2..Zn, then symbols
    ScalarRing ring;
    ring.vars.push_back(p.vars()[0]);
    for (int j = 1; j <= ny; ++j) ring.vars.push_back("Z" + std::to_string(j + 1));
    std::set<std::string> symbols;
    auto note_symbol = [&](const Scalar& sc) {
        if (std::holds_alternative<std::string>(sc)) symbols.insert(std::get<std::string>(sc));
    };
    note_symbol(eq.beta);
    note_symbol(eq.xi);
    for (const auto& g : eq.gamma) note_symbol(g);
    for (const auto& sym : symbols) {
        ring.symbol_index[sym] = static_cast<int>(ring.vars.size());
        ring.vars.push_back(sym);
    }

    // left side: substitute X1 -> X1 + beta, Y_j -> gamma_j * Z^{m * M_j}
    // with M = N^T, i.e. exponent column j of N
    std::vector<std::optional<LaurentPoly>> subst(p.nvars());
    subst[0] = LaurentPoly::variable(ring.vars, 0) + ring.value(eq.beta);
    for (int j = 1; j <= ny; ++j) {
        ExpVec mono(ring.vars.size(), 0);
        for (int t = 1; t <= ny; ++t) {
            // Y_j maps to gamma_j Z^{m M_j.} with M the transpose of N
            Rational exp_q = eq.n_matrix.at(t - 1, j - 1) * m;
            if (!is_integer(exp_q)) throw DomainError("non-integral exponent after rescaling");
            mono[t] = static_cast<long>(exp_q.get_num().get_si());
        }
        LaurentPoly zmono = LaurentPoly::monomial(ring.vars, mono, Rational(1));
        subst[j] = zmono * ring.value(eq.gamma[j - 1]);
    }
    LaurentPoly stretched = p;
    // first move p into the ring with Y_j stretched to Z_j^m
    for (int j = 1; j <= ny; ++j) stretched = stretched.stretch_var(j, m);
    // align variable names: X1, Z2.. (positions match)
    LaurentPoly p_ring(ring.vars);
    for (const auto& [e, c] : stretched.terms()) {
        ExpVec ne(ring.vars.size(), 0);
        for (int j = 0; j <= ny; ++j) ne[j] = e[j];
        p_ring.add_term(ne, c);
    }
    // left: substitute into the unstretched p, but with Y-images already in Z
    LaurentPoly p_for_subst(ring.vars);
    for (const auto& [e, c] : p.terms()) {
        ExpVec ne(ring.vars.size(), 0);
        for (int j = 0; j <= ny; ++j) ne[j] = e[j];
        p_for_subst.add_term(ne, c);
    }
    std::vector<std::optional<LaurentPoly>> subst_ring(ring.vars.size());
    subst_ring[0] = subst[0];
    for (int j = 1; j <= ny; ++j) subst_ring[j] = subst[j];
    LaurentPoly left = p_for_subst.substitute(subst_ring, ring.vars);

    // right side: xi * Z^{m u} * p(X1, Z^m)
    ExpVec umono(ring.vars.size(), 0);
    for (int j = 1; j <= ny; ++j) {
        Rational exp_q = eq.u[j - 1] * m;
        umono[j] = static_cast<long>(exp_q.get_num().get_si());
    }
    LaurentPoly right = ring.value(eq.xi) *
                        LaurentPoly::monomial(ring.vars, umono, Rational(1)) * p_ring;
    return left == right;
}

std::optional<std::vector<Rational>> derive_beta_constraint(const LaurentPoly& p,
                                                            const QMatrix& n_matrix) {
    auto s = support(p);
    bool any_nonconstant = false;
    int pick = -1;
    for (int i = 0; i < s.h(); ++i)
        if (!s.coeffs[i].is_constant()) {
            any_nonconstant = true;
            pick = i;
            break;
        }
    if (!any_nonconstant)
        throw DomainError("p independent of X1: every support coefficient is constant");
    auto sol = solve_permutation(s, n_matrix);
    if (!sol) return std::nullopt; // no constraint derivable

    // q(X1 + h! beta) - q(X1) with symbolic beta; expanding and comparing the
    // X1^{deg-1} coefficient forces deg * lc * h! * beta = 0, so beta = 0.
    const LaurentPoly& q = s.coeffs[pick];
    Integer hfact = factorial(s.h());
    std::vector<std::string> ring = {p.vars()[0], "beta"};
    LaurentPoly qr(ring);
    for (const auto& [e, c] : q.terms()) qr.add_term(ExpVec{e[0], 0}, c);
    std::vector<std::optional<LaurentPoly>> subst(2);
    Rational hf(hfact);
    subst[0] = LaurentPoly::variable(ring, 0) +
               LaurentPoly::variable(ring, 1).scale(hf);
    LaurentPoly diff = qr.substitute(subst, ring) - qr;
    // beta = 0 always solves the iterated relation; a non-constant q cannot
    // be periodic, so it is the only solution. The expansion confirms both:
    // diff vanishes at beta = 0 and is a nonzero polynomial in beta.
    std::vector<std::optional<LaurentPoly>> at_zero(2);
    at_zero[1] = LaurentPoly::zero(ring);
    if (!diff.substitute(at_zero, ring).is_zero())
        throw DomainError("internal: beta = 0 does not solve the iterated equation");
    if (diff.is_zero())
        throw DomainError("internal: non-constant coefficient produced a periodic expansion");
    return std::vector<Rational>{Rational(0)};
}

TranslationGenerator translation_generator(const std::vector<std::pair<Integer, Integer>>& pairs) {
    if (pairs.empty()) throw DomainError("translation_generator needs at least one pair");
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            Integer det = pairs[i].first * pairs[j].second - pairs[j].first * pairs[i].second;
            if (det != 0)
                throw DomainError("non-colinear translations: pairs " + std::to_string(i) +
                                  " and " + std::to_string(j));
        }
    Integer d1(0), d2(0);
    for (const auto& [a, b] : pairs) {
        mpz_gcd(d1.get_mpz_t(), d1.get_mpz_t(), a.get_mpz_t());
        mpz_gcd(d2.get_mpz_t(), d2.get_mpz_t(), b.get_mpz_t());
    }
    // orientation: the sign of d2 relative to d1 >= 0, read off any nonzero pair
    int sign = 1;
    for (const auto& [a, b] : pairs) {
        if (a == 0 || b == 0) continue;
        sign = ((a > 0) == (b > 0)) ? 1 : -1;
        break;
    }
    Integer d2_signed = sign * d2;
    TranslationGenerator out;
    out.d1 = d1;
    out.d2 = d2;
    out.sign = sign;
    for (const auto& [a, b] : pairs) {
        Integer r(0);
        if (d1 != 0)
            r = a / d1;
        else if (d2 != 0)
            r = b / d2_signed;
        // exact multiple check
        if (a != r * d1 || b != r * d2_signed)
            throw DomainError("non-colinear translations: pair is not a multiple of the generator");
        out.exponents.push_back(r);
    }
    return out;
}

} // namespace exphull

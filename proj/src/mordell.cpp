#include "exphull/mordell.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "exphull/errors.hpp"
#include "exphull/subspace_search.hpp"

namespace exphull {

GroupCoord coord_from_rational(const Rational& q) {
    return {RadicalValue::from_rational(q), {}};
}

GroupCoord GroupCoord::mul(const GroupCoord& o) const {
    GroupCoord r;
    r.rad = rad.mul(o.rad);
    r.mono = mono;
    for (const auto& [k, e] : o.mono) {
        r.mono[k] += e;
        if (r.mono[k] == 0) r.mono.erase(k);
    }
    return r;
}

GroupCoord GroupCoord::pow(const Rational& e) const {
    GroupCoord r;
    r.rad = rad.pow(e);
    if (e != 0)
        for (const auto& [k, x] : mono) r.mono[k] = x * e;
    return r;
}

bool GroupCoord::operator<(const GroupCoord& o) const {
    if (!(rad == o.rad)) return rad < o.rad;
    return mono < o.mono;
}

std::string GroupCoord::to_string(const GammaConfig* cfg) const {
    std::ostringstream os;
    bool wrote = false;
    if (!rad.is_one() || mono.empty()) {
        os << rad.to_string();
        wrote = true;
    }
    for (const auto& [k, e] : mono) {
        if (wrote) os << "*";
        wrote = true;
        os << (cfg ? cfg->locus.vars()[k] : "z" + std::to_string(k));
        if (e != 1) os << "^(" << e.get_str() << ")";
    }
    return os.str();
}

FiniteRankGroup group_from_config(const GammaConfig& cfg, const SubspaceSpec& hull, int depth) {
    FiniteRankGroup grp;
    grp.n = 1;
    grp.depth = depth;
    grp.config = cfg;
    int n = cfg.npairs();
    QMatrix rref = hull.rows.rref();
    for (int i = 0; i < rref.rows(); ++i) {
        auto row = primitive_integer_row(rref.row(i));
        // drop kernel-type rows: y^row = 1 modulo the locus
        if (cfg.locus.contains(kernel_test_poly(cfg, row))) continue;
        GroupCoord coord;
        for (int j = 0; j < n; ++j)
            if (row[j] != 0) coord.mono[n + j] = Rational(row[j]);
        grp.generators.push_back({coord});
    }
    return grp;
}

namespace {

long depth_factorial(int depth) {
    long f = 1;
    for (int i = 2; i <= depth; ++i) {
        f *= i;
        if (f > 100000) throw ResourceLimitError("division depth too large");
    }
    return f;
}

bool group_is_symbolic(const FiniteRankGroup& grp) {
    for (const auto& gen : grp.generators)
        for (const auto& c : gen)
            if (c.is_symbolic()) return true;
    return false;
}

// Effective exponent denominator: formal depth!-th roots for rational
// groups; symbolic coordinates have no principal-branch structure, so
// symbolic groups are enumerated with integer exponents only.
long exponent_denominator(const FiniteRankGroup& grp) {
    return group_is_symbolic(grp) ? 1 : depth_factorial(grp.depth);
}

// Sum of radical-class contributions: fractional class key -> polynomial in
// the evaluation variables (s-parameters first, then config coordinates).
using ClassSums = std::map<std::string, LaurentPoly>;

struct EvalContext {
    std::vector<std::string> vars; ///< s vars then config vars
    int s_count = 0;
    const GammaConfig* cfg = nullptr;
};

// term = coefficient * prod coords[i]^{e_i} * prod s_k^{sexp_k}; exponents on
// symbolic coordinates must be integers.
void accumulate_term(ClassSums& sums, const EvalContext& ctx, const Rational& coefficient,
                     const std::vector<GroupCoord>& coords, const ExpVec& e,
                     const ExpVec& sexp) {
    RadicalValue rad;
    std::map<int, Rational> mono;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (e[i] == 0) continue;
        GroupCoord p = coords[i].pow(Rational(e[i]));
        rad = rad.mul(p.rad);
        for (const auto& [k, x] : p.mono) {
            mono[k] += x;
            if (mono[k] == 0) mono.erase(k);
        }
    }
    ExpVec full(ctx.vars.size(), 0);
    for (int k = 0; k < ctx.s_count; ++k) full[k] = sexp.empty() ? 0 : sexp[k];
    for (const auto& [k, x] : mono) {
        if (!is_integer(x))
            throw DomainError("fractional exponent on a symbolic coordinate; use integer words");
        full[ctx.s_count + k] = static_cast<long>(x.get_num().get_si());
    }
    LaurentPoly term = LaurentPoly::monomial(ctx.vars, full, coefficient * rad.rational_part());
    std::string key = rad.fractional_key();
    auto it = sums.find(key);
    if (it == sums.end())
        sums.emplace(key, term);
    else
        it->second = it->second + term;
}

// Zero test: every radical class must vanish; symbolic classes vanish modulo
// the configuration locus, coefficient by s-monomial coefficient.
bool sums_vanish(const ClassSums& sums, const EvalContext& ctx) {
    for (const auto& [key, poly] : sums) {
        (void)key;
        if (poly.is_zero()) continue;
        if (!ctx.cfg) return false;
        // split by the s-part of the exponent and reduce each coefficient
        std::map<ExpVec, LaurentPoly> by_s;
        const auto& cvars = ctx.cfg->locus.vars();
        for (const auto& [e, c] : poly.terms()) {
            ExpVec se(e.begin(), e.begin() + ctx.s_count);
            ExpVec ce(e.begin() + ctx.s_count, e.end());
            auto it = by_s.find(se);
            if (it == by_s.end()) it = by_s.emplace(se, LaurentPoly(cvars)).first;
            it->second.add_term(ce, c);
        }
        for (const auto& [se, coeff] : by_s) {
            (void)se;
            if (!ctx.cfg->locus.contains(coeff)) return false;
        }
    }
    return true;
}

// Evaluates w at y_i = coords_i * prod_k s_k^{lambda_k i} and tests vanishing.
bool coset_inside(const Ideal& w, const std::vector<GroupCoord>& coords,
                  const std::vector<std::vector<Integer>>& lambdas,
                  const std::optional<GammaConfig>& cfg) {
    int n = static_cast<int>(coords.size());
    EvalContext ctx;
    ctx.s_count = static_cast<int>(lambdas.size());
    for (int k = 0; k < ctx.s_count; ++k) ctx.vars.push_back("s" + std::to_string(k + 1));
    if (cfg) {
        ctx.cfg = &*cfg;
        for (const auto& v : cfg->locus.vars()) ctx.vars.push_back(v);
    }
    // torus coordinates of w are its first n inverted y-variables
    const auto& wvars = w.vars();
    std::vector<int> torus;
    for (size_t i = 0; i < wvars.size() && static_cast<int>(torus.size()) < n; ++i)
        if (wvars[i][0] == 'y') torus.push_back(static_cast<int>(i));
    if (static_cast<int>(torus.size()) != n) throw DomainError("group rank does not match w");

    for (const auto& g : w.generators()) {
        ClassSums sums;
        for (const auto& [e, c] : g.terms()) {
            ExpVec ce(n, 0);
            for (int i = 0; i < n; ++i) ce[i] = e[torus[i]];
            ExpVec sexp(ctx.s_count, 0);
            for (int k = 0; k < ctx.s_count; ++k)
                for (int i = 0; i < n; ++i)
                    sexp[k] += static_cast<long>(lambdas[k][i].get_si()) * ce[i];
            accumulate_term(sums, ctx, c, coords, ce, sexp);
        }
        if (!sums_vanish(sums, ctx)) return false;
    }
    return true;
}

std::vector<long> index_to_word(long index, int rank, long radius) {
    // mixed-radix decode over [-radius, radius]^rank, lexicographic
    std::vector<long> w(rank);
    long base = 2 * radius + 1;
    for (int i = rank - 1; i >= 0; --i) {
        w[i] = index % base - radius;
        index /= base;
    }
    return w;
}

long word_count(int rank, long radius) {
    long base = 2 * radius + 1;
    long total = 1;
    for (int i = 0; i < rank; ++i) {
        if (total > 4000000 / base) throw ResourceLimitError("group word enumeration too large");
        total *= base;
    }
    return total;
}

} // namespace

std::vector<GroupCoord> group_element(const FiniteRankGroup& grp, const std::vector<long>& numerators) {
    if (numerators.size() != grp.generators.size())
        throw DomainError("one exponent per generator");
    long denom = exponent_denominator(grp);
    std::vector<GroupCoord> coords(grp.n);
    for (auto& c : coords) c = GroupCoord{};
    for (size_t g = 0; g < grp.generators.size(); ++g) {
        if (numerators[g] == 0) continue;
        Rational e = make_rational(numerators[g], denom);
        for (int i = 0; i < grp.n; ++i) coords[i] = coords[i].mul(grp.generators[g][i].pow(e));
    }
    return coords;
}

bool group_element_in(const Ideal& w, const FiniteRankGroup& grp, const std::vector<long>& numerators) {
    return coset_inside(w, group_element(grp, numerators), {}, grp.config);
}

bool coset_in_variety(const Ideal& w, const MLCoset& coset,
                      const std::optional<GammaConfig>& cfg) {
    std::vector<std::vector<Integer>> lambdas;
    for (int r = 0; r < coset.cocharacters.rows(); ++r) lambdas.push_back(coset.cocharacters.row(r));
    return coset_inside(w, coset.translate, lambdas, cfg);
}

bool coset_contains(const MLCoset& coset, const std::vector<GroupCoord>& element,
                    const std::optional<GammaConfig>& cfg) {
    int n = static_cast<int>(element.size());
    // characters annihilating the cocharacter lattice cut out the subtorus
    IntMatrix ann = coset.cocharacters.rows() == 0
                        ? IntMatrix::identity(n)
                        : integer_kernel(coset.cocharacters);
    for (int col = 0; col < ann.cols(); ++col) {
        GroupCoord value;
        std::vector<Integer> character(n);
        for (int i = 0; i < n; ++i) character[i] = ann.at(i, col);
        for (int i = 0; i < n; ++i) {
            if (character[i] == 0) continue;
            Rational e(character[i]);
            value = value.mul(element[i].pow(e)).mul(coset.translate[i].pow(-e));
        }
        if (!value.rad.is_one()) return false;
        if (!value.mono.empty()) {
            if (!cfg) return false;
            // symbolic ratio must be a kernel monomial: y^v = 1 mod locus
            std::vector<Integer> v(cfg->npairs(), Integer(0));
            for (const auto& [k, x] : value.mono) {
                if (!is_integer(x)) return false;
                int pair = k - cfg->npairs();
                if (pair < 0 || pair >= cfg->npairs()) return false;
                v[pair] = Integer(x.get_num());
            }
            if (!cfg->locus.contains(kernel_test_poly(*cfg, v))) return false;
        }
    }
    return true;
}

namespace {

bool coset_subset(const MLCoset& a, const MLCoset& b, const std::optional<GammaConfig>& cfg) {
    // torus containment: Q-rowspace of a's cocharacters inside b's
    QMatrix qa = QMatrix::from_int(a.cocharacters);
    QMatrix qb = QMatrix::from_int(b.cocharacters);
    for (int i = 0; i < qa.rows(); ++i)
        if (!in_rowspace(qa.row(i), qb)) return false;
    return coset_contains(b, a.translate, cfg);
}

} // namespace

CosetDecomposition find_cosets_bounded(const Ideal& w, const FiniteRankGroup& grp, long word,
                                       long height) {
    if (!w.is_proper()) throw DomainError("find_cosets_bounded requires a proper ideal");
    long denom = exponent_denominator(grp);
    int rank = static_cast<int>(grp.generators.size());
    long radius = word * denom;
    long total = word_count(rank, radius);

    CosetDecomposition dec;
    auto cochar_family = primitive_vectors(grp.n, height);
    for (long idx = 0; idx < total; ++idx) {
        auto numerators = index_to_word(idx, rank, radius);
        auto elem = group_element(grp, numerators);
        if (!coset_inside(w, elem, {}, grp.config)) continue;
        // greedily grow a cocharacter lattice keeping translate * T inside w
        std::vector<std::vector<Integer>> rows;
        for (const auto& lambda : cochar_family) {
            std::vector<std::vector<Integer>> trial = rows;
            trial.emplace_back(lambda.begin(), lambda.end());
            if (IntMatrix::from_rows(trial).rank() == static_cast<int>(rows.size())) continue;
            if (coset_inside(w, elem, trial, grp.config)) rows = std::move(trial);
        }
        MLCoset coset;
        coset.translate = elem;
        coset.cocharacters =
            rows.empty() ? IntMatrix(0, grp.n) : row_saturation(IntMatrix::from_rows(rows));
        coset.found_exponents = numerators;
        // deduplicate: skip if contained in an existing coset; drop existing
        // cosets contained in the new one
        bool contained = false;
        for (const auto& c : dec.cosets)
            if (coset_subset(coset, c, grp.config)) { contained = true; break; }
        if (contained) continue;
        std::vector<MLCoset> kept;
        for (auto& c : dec.cosets)
            if (!coset_subset(c, coset, grp.config)) kept.push_back(std::move(c));
        kept.push_back(std::move(coset));
        dec.cosets = std::move(kept);
    }
    return dec;
}

Verdict verify_decomposition(const Ideal& w, const FiniteRankGroup& grp,
                             const CosetDecomposition& dec, long word) {
    long denom = exponent_denominator(grp);
    int rank = static_cast<int>(grp.generators.size());
    long radius = word * denom;
    long total = word_count(rank, radius);
    for (long idx = 0; idx < total; ++idx) {
        auto numerators = index_to_word(idx, rank, radius);
        auto elem = group_element(grp, numerators);
        bool in_w = coset_inside(w, elem, {}, grp.config);
        bool in_cosets = false;
        for (const auto& c : dec.cosets)
            if (coset_contains(c, elem, grp.config)) { in_cosets = true; break; }
        if (in_w != in_cosets) {
            Verdict v;
            v.status = Status::Fails;
            v.bound = word;
            v.witness_exponents = numerators;
            std::ostringstream os;
            os << "ml-verify: element (";
            for (int i = 0; i < grp.n; ++i)
                os << (i ? ", " : "") << elem[i].to_string(grp.config ? &*grp.config : nullptr);
            os << ") " << (in_w ? "lies in W but in no listed coset" : "lies in a coset but not in W");
            v.note = os.str();
            return v;
        }
    }
    return Verdict::holds(word, "ml-verify: membership matches the decomposition for all words");
}

std::vector<GroupCoord> coset_constants(const CosetDecomposition& dec,
                                        const std::vector<Integer>& character) {
    std::vector<GroupCoord> values;
    for (const auto& coset : dec.cosets) {
        int n = static_cast<int>(coset.translate.size());
        if (static_cast<int>(character.size()) != n)
            throw DomainError("character length does not match the cosets");
        for (int r = 0; r < coset.cocharacters.rows(); ++r) {
            Integer dot(0);
            for (int i = 0; i < n; ++i) dot += coset.cocharacters.at(r, i) * character[i];
            if (dot != 0)
                throw DomainError("character not constant: it does not annihilate a coset lattice");
        }
        GroupCoord value;
        for (int i = 0; i < n; ++i)
            if (character[i] != 0)
                value = value.mul(coset.translate[i].pow(Rational(character[i])));
        values.push_back(value);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

} // namespace exphull

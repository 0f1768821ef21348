#include "exphull/gamma.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "exphull/errors.hpp"
#include "exphull/subspace_search.hpp"

namespace exphull {

struct GammaConfig::Cache {
    std::mutex mutex;
    std::map<std::string, int> td; ///< keyed by rowspace key
    int locus_rank = -1;           ///< rank of the locus differentials
};

namespace {

std::vector<std::string> config_vars(const std::vector<std::string>& names) {
    std::vector<std::string> vars;
    for (const auto& n : names) vars.push_back("x_" + n);
    for (const auto& n : names) vars.push_back("y_" + n);
    return vars;
}

std::set<std::string> config_inverted(const std::vector<std::string>& names) {
    std::set<std::string> inv;
    for (const auto& n : names) inv.insert("y_" + n);
    return inv;
}

// Integer spanning rows of the rational row space (primitive, deduplicated).
std::vector<std::vector<Integer>> integer_basis(const QMatrix& rows) {
    QMatrix r = rows.rref();
    std::vector<std::vector<Integer>> out;
    for (int i = 0; i < r.rows(); ++i) out.push_back(primitive_integer_row(r.row(i)));
    return out;
}

} // namespace

LaurentPoly x_combination_poly(const GammaConfig& cfg, const std::vector<Rational>& row) {
    const auto& vars = cfg.locus.vars();
    LaurentPoly p(vars);
    for (int j = 0; j < cfg.npairs(); ++j) {
        if (row[j] == 0) continue;
        p = p + LaurentPoly::variable(vars, j).scale(row[j]);
    }
    return p;
}

LaurentPoly kernel_test_poly(const GammaConfig& cfg, const std::vector<Integer>& row) {
    const auto& vars = cfg.locus.vars();
    int n = cfg.npairs();
    ExpVec e(vars.size(), 0);
    for (int j = 0; j < n; ++j) e[n + j] = row[j].get_si();
    return LaurentPoly::monomial(vars, e, Rational(1)) - LaurentPoly::constant(vars, Rational(1));
}

void validate_config(const GammaConfig& cfg) {
    int n = cfg.npairs();
    if (n < 1) throw ValidationError("configuration needs at least the kernel pair");
    {
        std::set<std::string> uniq(cfg.pair_names.begin(), cfg.pair_names.end());
        if (static_cast<int>(uniq.size()) != n) throw ValidationError("duplicate pair names");
        for (const auto& name : cfg.pair_names)
            if (name.empty() || name[0] == '_' || name.rfind("x_", 0) == 0 ||
                name.rfind("y_", 0) == 0)
                throw ValidationError("bad pair name '" + name + "'");
    }
    if (cfg.base_len < 1 || cfg.base_len > n)
        throw ValidationError("base prefix length out of range");
    if (cfg.locus.vars() != config_vars(cfg.pair_names))
        throw ValidationError("locus variables do not match the pair list");
    if (cfg.qlinear.rows() > 0 && cfg.qlinear.cols() != n)
        throw ValidationError("qlinear row length does not match the pair count");

    // kernel pair: y_tau - 1 must lie in the locus
    const auto& vars = cfg.locus.vars();
    LaurentPoly kernel_rel =
        LaurentPoly::variable(vars, n) - LaurentPoly::constant(vars, Rational(1));
    if (!cfg.locus.contains(kernel_rel))
        throw ValidationError("kernel pair missing y_" + cfg.pair_names[0] + " - 1 in the locus");

    if (!cfg.locus.is_proper()) throw ValidationError("locus is the unit ideal");

    for (int i = 0; i < cfg.qlinear.rows(); ++i)
        if (!cfg.locus.contains(x_combination_poly(cfg, cfg.qlinear.row(i))))
            throw ValidationError("qlinear row " + std::to_string(i) + " is not in the locus");

    if (!cfg.permissive_qlinear) {
        // every x-linear member of the locus must be declared in qlinear
        std::vector<std::string> xnames;
        for (int i = 0; i < n; ++i) xnames.push_back(cfg.x_name(i));
        Ideal xpart = cfg.locus.eliminate(xnames);
        auto gb = xpart.basis();
        // linear dependencies among NF(x_i) and NF(1) modulo the contraction
        std::vector<LaurentPoly> nf;
        for (int i = 0; i < n; ++i)
            nf.push_back(reduce_modulo(LaurentPoly::variable(xnames, i), gb, TermOrder::degrevlex()));
        nf.push_back(LaurentPoly::constant(xnames, Rational(1)));
        // collect the support
        std::vector<ExpVec> support;
        for (const auto& p : nf)
            for (const auto& [e, c] : p.terms()) {
                (void)c;
                if (std::find(support.begin(), support.end(), e) == support.end())
                    support.push_back(e);
            }
        std::sort(support.begin(), support.end());
        // matrix: columns = support monomials, rows = nf polynomials
        QMatrix m(static_cast<int>(nf.size()), static_cast<int>(support.size()));
        for (size_t i = 0; i < nf.size(); ++i)
            for (const auto& [e, c] : nf[i].terms()) {
                auto it = std::lower_bound(support.begin(), support.end(), e);
                m.at(static_cast<int>(i), static_cast<int>(it - support.begin())) = c;
            }
        // rref of [m | I]: rows whose m-part vanished record dependencies
        // (c_0..c_{n-1}, c_const) with sum c_i NF(x_i) + c_const = 0, i.e.
        // x-linear members of the locus
        QMatrix aug(m.rows(), m.cols() + n + 1);
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, m.cols() + i) = 1;
        }
        QMatrix red = aug.rref();
        for (int i = 0; i < red.rows(); ++i) {
            bool mzero = true;
            for (int j = 0; j < m.cols(); ++j)
                if (red.at(i, j) != 0) { mzero = false; break; }
            if (!mzero) continue;
            std::vector<Rational> dep(n + 1);
            for (int j = 0; j <= n; ++j) dep[j] = red.at(i, m.cols() + j);
            std::vector<Rational> xpart_vec(dep.begin(), dep.begin() + n);
            bool trivial = std::all_of(xpart_vec.begin(), xpart_vec.end(),
                                       [](const Rational& q) { return q == 0; });
            if (trivial) continue;
            if (dep[n] != 0)
                throw ValidationError("locus contains an undeclared affine x-relation");
            if (!in_rowspace(xpart_vec, cfg.qlinear))
                throw ValidationError("locus contains an undeclared Q-linear x-relation");
        }
    }
}

GammaConfig make_config(std::vector<std::string> pair_names, int base_len,
                        std::vector<LaurentPoly> locus_gens, QMatrix qlinear,
                        bool irreducible_asserted, bool permissive_qlinear) {
    GammaConfig cfg;
    cfg.pair_names = std::move(pair_names);
    cfg.base_len = base_len;
    auto vars = config_vars(cfg.pair_names);
    cfg.locus = Ideal(vars, std::move(locus_gens), config_inverted(cfg.pair_names));
    cfg.qlinear = qlinear.rows() == 0 ? QMatrix(0, cfg.npairs()) : std::move(qlinear);
    cfg.irreducible_asserted = irreducible_asserted;
    cfg.permissive_qlinear = permissive_qlinear;
    cfg.cache = std::make_shared<GammaConfig::Cache>();
    validate_config(cfg);
    return cfg;
}

SubspaceSpec make_subspace(const GammaConfig& cfg, QMatrix rows) {
    if (rows.rows() > 0 && rows.cols() != cfg.npairs())
        throw DomainError("subspace row length does not match the pair count");
    if (rank_over(rows, cfg.qlinear) != rows.rows())
        throw DomainError("subspace rows are dependent modulo the qlinear relations");
    return {std::move(rows)};
}

SubspaceSpec kernel_subspace(const GammaConfig& cfg) {
    QMatrix m(1, cfg.npairs());
    m.at(0, 0) = 1;
    return {m};
}

SubspaceSpec full_subspace(const GammaConfig& cfg) { return {QMatrix::identity(cfg.npairs())}; }

SubspaceSpec empty_subspace(const GammaConfig& cfg) { return {QMatrix(0, cfg.npairs())}; }

SubspaceSpec base_subspace(const GammaConfig& cfg) {
    QMatrix m(cfg.base_len, cfg.npairs());
    for (int i = 0; i < cfg.base_len; ++i) m.at(i, i) = 1;
    return {m};
}

SubspaceSpec span_of_pairs(const GammaConfig& cfg, const std::vector<std::string>& names) {
    QMatrix m(static_cast<int>(names.size()), cfg.npairs());
    for (size_t i = 0; i < names.size(); ++i) {
        auto it = std::find(cfg.pair_names.begin(), cfg.pair_names.end(), names[i]);
        if (it == cfg.pair_names.end()) throw DomainError("unknown pair name " + names[i]);
        m.at(static_cast<int>(i), static_cast<int>(it - cfg.pair_names.begin())) = 1;
    }
    return {m};
}

namespace {

// Rank of a matrix of polynomials over the function field of the locus:
// Gaussian elimination with fraction-free row updates, every entry and every
// zero test reduced modulo the (cached) Groebner basis of the locus.
int poly_matrix_rank(std::vector<std::vector<LaurentPoly>> m, const Ideal& locus) {
    if (m.empty()) return 0;
    auto nf = [&](const LaurentPoly& p) { return locus.normal_form(p); };
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i) {
            m[i][col] = nf(m[i][col]);
            if (!m[i][col].is_zero()) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const LaurentPoly p = m[rank][col];
        for (int i = rank + 1; i < rows; ++i) {
            if (m[i][col].is_zero()) continue;
            const LaurentPoly f = m[i][col];
            for (int j = col; j < cols; ++j) m[i][j] = nf(m[i][j] * p - m[rank][j] * f);
        }
        ++rank;
    }
    return rank;
}

// Differential rows of the locus generators (relations in the module of
// Kaehler differentials of the function field).
std::vector<std::vector<LaurentPoly>> locus_differentials(const GammaConfig& cfg) {
    const auto& vars = cfg.locus.vars();
    int m = static_cast<int>(vars.size());
    std::vector<std::vector<LaurentPoly>> rows;
    for (const auto& g : cfg.locus.basis()) {
        std::vector<LaurentPoly> grad;
        grad.reserve(m);
        for (int j = 0; j < m; ++j) grad.push_back(g.derivative(j));
        rows.push_back(std::move(grad));
    }
    return rows;
}

} // namespace

int td_of(const GammaConfig& cfg, const QMatrix& rows) {
    std::string key = rows.rowspace_key();
    {
        std::lock_guard<std::mutex> lock(cfg.cache->mutex);
        auto it = cfg.cache->td.find(key);
        if (it != cfg.cache->td.end()) return it->second;
    }
    // td of the subfield generated by the pair functions u_i = <row_i, x> and
    // w_i = y^{row_i} equals the rank their differentials add over the locus
    // relations (char 0; conditional on the locus being prime, as asserted)
    auto basis = integer_basis(rows);
    int n = cfg.npairs();
    const auto& vars = cfg.locus.vars();
    auto jac = locus_differentials(cfg);
    int base_rank;
    {
        std::lock_guard<std::mutex> lock(cfg.cache->mutex);
        base_rank = cfg.cache->locus_rank;
    }
    if (base_rank < 0) {
        base_rank = poly_matrix_rank(jac, cfg.locus);
        std::lock_guard<std::mutex> lock(cfg.cache->mutex);
        cfg.cache->locus_rank = base_rank;
    }
    for (const auto& r : basis) {
        // d<r, x>: constant gradient on the x block
        std::vector<LaurentPoly> du(vars.size(), LaurentPoly(vars));
        for (int j = 0; j < n; ++j)
            if (r[j] != 0) du[j] = LaurentPoly::constant(vars, Rational(r[j]));
        jac.push_back(std::move(du));
        // d(y^r), scaled by the unit y^{-r} * prod(y): entries r_j * prod_{t != j} y_t
        std::vector<LaurentPoly> dw(vars.size(), LaurentPoly(vars));
        for (int j = 0; j < n; ++j) {
            if (r[j] == 0) continue;
            ExpVec e(vars.size(), 0);
            for (int t = 0; t < n; ++t)
                if (t != j) e[n + t] = 1;
            dw[n + j] = LaurentPoly::monomial(vars, e, Rational(r[j]));
        }
        jac.push_back(std::move(dw));
    }
    int value = poly_matrix_rank(jac, cfg.locus) - base_rank;
    std::lock_guard<std::mutex> lock(cfg.cache->mutex);
    cfg.cache->td.emplace(key, value);
    return value;
}

int relative_td(const GammaConfig& cfg, const SubspaceSpec& sub, const SubspaceSpec& over) {
    return td_of(cfg, sub.rows.stack(over.rows)) - td_of(cfg, over.rows);
}

long delta_value(const GammaConfig& cfg, const SubspaceSpec& sub, const SubspaceSpec& over) {
    int td = relative_td(cfg, sub, over);
    int ldim = rank_over(sub.rows, over.rows.stack(cfg.qlinear));
    return static_cast<long>(td) - ldim;
}

namespace {

// delta of (sub + added rows) over sub, sharing the td memo.
long delta_extension(const GammaConfig& cfg, const QMatrix& sub_rows, int sub_td,
                     const QMatrix& span_rows) {
    int td = td_of(cfg, span_rows) - sub_td;
    int ldim = rank_over(span_rows, sub_rows.stack(cfg.qlinear));
    return static_cast<long>(td) - ldim;
}

// Core bounded search: smallest-first enumeration of extensions of sub by
// primitive vectors of the given height; Fails on the first extension with
// negative delta.
Verdict delta_search(const GammaConfig& cfg, const QMatrix& sub_rows, long height,
                     const std::string& what) {
    int n = cfg.npairs();
    int sub_td = td_of(cfg, sub_rows);
    SubspaceExtender extender(sub_rows.rref(), primitive_vectors(n, height));
    while (extender.advance()) {
        const auto& level = extender.level();
        std::vector<long> deltas(level.size());
        auto found = first_matching(level.size(), [&](size_t i) {
            deltas[i] = delta_extension(cfg, sub_rows, sub_td, level[i].span);
            return deltas[i] < 0;
        });
        if (found) {
            Verdict v;
            v.status = Status::Fails;
            v.bound = height;
            v.witness_subspace = level[*found].added;
            v.witness_value = Rational(deltas[*found]);
            v.note = what + ": delta " + std::to_string(deltas[*found]) +
                     " over the given subspace";
            return v;
        }
    }
    return Verdict::holds(height, what + ": no negative extension at this height");
}

} // namespace

Verdict schanuel_check(const GammaConfig& cfg, long height) {
    return delta_search(cfg, kernel_subspace(cfg).rows, height, "schanuel");
}

Verdict is_strong_bounded(const GammaConfig& cfg, const SubspaceSpec& sub, long height) {
    int n = cfg.npairs();
    std::vector<Rational> kernel_row(n, Rational(0));
    kernel_row[0] = 1;
    if (!in_rowspace(kernel_row, sub.rows.stack(cfg.qlinear)))
        throw DomainError("kernel pair span not contained in sub");

    // bounded kernel trap: no kernel element of the configuration may lie
    // outside sub (checked via qlinear + locus)
    QMatrix sub_ext = sub.rows.stack(cfg.qlinear);
    for (const auto& v : primitive_vectors(n, height)) {
        std::vector<Rational> r(v.begin(), v.end());
        if (in_rowspace(r, sub_ext)) continue;
        std::vector<Integer> z(v.begin(), v.end());
        if (cfg.locus.contains(kernel_test_poly(cfg, z))) {
            Verdict verdict;
            verdict.status = Status::Fails;
            verdict.bound = height;
            verdict.witness_subspace = QMatrix::from_rows({r});
            verdict.note = "strong: kernel element outside the subspace";
            return verdict;
        }
    }
    return delta_search(cfg, sub.rows, height, "strong");
}

Verdict hull_certify(const GammaConfig& cfg, const SubspaceSpec& base,
                     const SubspaceSpec& candidate, long height) {
    int n = cfg.npairs();
    QMatrix base_eff = base.rows.stack(kernel_subspace(cfg).rows);
    for (int i = 0; i < base_eff.rows(); ++i)
        if (!in_rowspace(base_eff.row(i), candidate.rows))
            throw DomainError("base and kernel must be contained in the candidate");

    Verdict strong = is_strong_bounded(cfg, candidate, height);
    if (!strong.is_holds()) {
        strong.note = "hull: candidate is not strong at this height (" + strong.note + ")";
        return strong;
    }

    int cand_rank = candidate.rows.rank();
    int base_rank = base_eff.rank();
    int cand_td = td_of(cfg, candidate.rows);
    SubspaceExtender extender(base_eff.rref(), primitive_vectors(n, height), candidate.rows);
    // level 0 is base itself; every proper intermediate subspace must fail to
    // be strong, with delta(candidate/M) < 0 as the cheap refutation
    for (;;) {
        const auto& level = extender.level();
        std::vector<const SubspaceExtender::Node*> proper;
        for (const auto& node : level)
            if (node.span.rank() < cand_rank) proper.push_back(&node);
        // cheap refutation first: delta(candidate/M) < 0 already rules M out
        std::vector<char> refuted(proper.size(), 0);
        parallel_for(proper.size(), [&](size_t i) {
            const auto& m = proper[i]->span;
            long d = static_cast<long>(cand_td - td_of(cfg, m)) -
                     rank_over(candidate.rows, m.stack(cfg.qlinear));
            if (d < 0) refuted[i] = 1;
        });
        for (size_t i = 0; i < proper.size(); ++i) {
            if (refuted[i]) continue;
            SubspaceSpec m{proper[i]->span};
            Verdict sv = is_strong_bounded(cfg, m, height);
            if (sv.is_holds()) {
                Verdict verdict;
                verdict.status = Status::Fails;
                verdict.bound = height;
                verdict.witness_subspace = proper[i]->span;
                verdict.note = "hull: a proper subspace over the base certifies as strong "
                               "at this height";
                return verdict;
            }
        }
        // only proper intermediates matter: stop before the full-rank level
        if (extender.levels_done() >= cand_rank - base_rank - 1) break;
        if (!extender.advance()) break;
    }
    return Verdict::holds(height, "hull: candidate strong and minimal at this height");
}

GammaConfig divide_basis(const GammaConfig& cfg, long m) {
    if (m < 1) throw DomainError("divide_basis requires m >= 1");
    int n = cfg.npairs();
    std::vector<std::string> names = cfg.pair_names;
    std::vector<int> divided; // indices of non-base pairs
    for (int i = cfg.base_len; i < n; ++i) {
        divided.push_back(i);
        names.push_back(cfg.pair_names[i] + "_d");
    }
    int nn = static_cast<int>(names.size());
    auto vars = config_vars(names);
    std::vector<LaurentPoly> gens;
    for (const auto& g : cfg.locus.generators()) gens.push_back(g.align_to(vars));
    for (size_t t = 0; t < divided.size(); ++t) {
        int i = divided[t];
        int ip = n + static_cast<int>(t); // primed pair index
        // m x' - x and y'^m - y
        gens.push_back(LaurentPoly::variable(vars, ip).scale(Rational(m)) -
                       LaurentPoly::variable(vars, i));
        gens.push_back(LaurentPoly::variable(vars, nn + ip, m) -
                       LaurentPoly::variable(vars, nn + i));
    }
    std::vector<std::vector<Rational>> qrows;
    for (int r = 0; r < cfg.qlinear.rows(); ++r) {
        std::vector<Rational> row = cfg.qlinear.row(r);
        row.resize(nn, Rational(0));
        qrows.push_back(row);
    }
    for (size_t t = 0; t < divided.size(); ++t) {
        std::vector<Rational> row(nn, Rational(0));
        row[divided[t]] = 1;
        row[n + static_cast<int>(t)] = Rational(-m);
        qrows.push_back(row);
    }
    return make_config(names, n, gens,
                       qrows.empty() ? QMatrix(0, nn) : QMatrix::from_rows(qrows),
                       cfg.irreducible_asserted, cfg.permissive_qlinear);
}

Verdict witnessing_check(const GammaConfig& cfg, const std::vector<std::string>& sequence,
                         const std::vector<WitnessFlag>& flags) {
    if (sequence.size() != flags.size()) throw DomainError("one flag per sequence step");
    int n = cfg.npairs();
    std::vector<int> seq_idx;
    for (const auto& name : sequence) {
        auto it = std::find(cfg.pair_names.begin(), cfg.pair_names.end(), name);
        if (it == cfg.pair_names.end()) throw DomainError("unknown pair name " + name);
        int idx = static_cast<int>(it - cfg.pair_names.begin());
        if (idx < cfg.base_len) throw DomainError("sequence pair " + name + " lies in the base");
        seq_idx.push_back(idx);
    }
    // precondition: sequence pairs Q-linearly independent over the base
    QMatrix base_rows = base_subspace(cfg).rows.stack(cfg.qlinear);
    QMatrix seq_rows(static_cast<int>(seq_idx.size()), n);
    for (size_t i = 0; i < seq_idx.size(); ++i) seq_rows.at(static_cast<int>(i), seq_idx[i]) = 1;
    if (rank_over(seq_rows, base_rows) != seq_rows.rows())
        throw DomainError("sequence pairs are Q-linearly dependent over the base");

    auto contraction_dim = [&](const std::vector<std::string>& keep) {
        auto d = cfg.locus.eliminate(keep).dimension();
        if (!d) throw DomainError("locus contraction is empty");
        return *d;
    };

    std::vector<std::string> known;
    for (int i = 0; i < cfg.base_len; ++i) {
        known.push_back(cfg.x_name(i));
        known.push_back(cfg.y_name(i));
    }
    for (size_t step = 0; step < seq_idx.size(); ++step) {
        int i = seq_idx[step];
        std::string flagged = flags[step] == WitnessFlag::YAlgebraic ? cfg.y_name(i) : cfg.x_name(i);
        std::string other = flags[step] == WitnessFlag::YAlgebraic ? cfg.x_name(i) : cfg.y_name(i);
        int dim_known = contraction_dim(known);
        std::vector<std::string> with_flagged = known;
        with_flagged.push_back(flagged);
        bool flagged_algebraic = contraction_dim(with_flagged) == dim_known;
        std::vector<std::string> with_other = known;
        with_other.push_back(other);
        bool other_algebraic = contraction_dim(with_other) == dim_known;
        if (!flagged_algebraic) {
            Verdict v;
            v.status = Status::Fails;
            v.bound = 0;
            v.note = "witness: step " + std::to_string(step + 1) + " (" + sequence[step] +
                     "): flagged coordinate is not algebraic over the previous ones";
            return v;
        }
        if (other_algebraic)
            throw DomainError("flag contradiction: both coordinates of " + sequence[step] +
                              " are algebraic at step " + std::to_string(step + 1));
        known.push_back(cfg.x_name(i));
        known.push_back(cfg.y_name(i));
    }
    Verdict v = Verdict::holds(0, sequence.empty()
                                      ? "witness: empty sequence, element lies in the base"
                                      : "witness: sequence is a basis for the hull of the base "
                                        "together with its last element");
    return v;
}

} // namespace exphull

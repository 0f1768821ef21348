#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exphull/gamma.hpp"
#include "exphull/ideal.hpp"
#include "exphull/intmat.hpp"
#include "exphull/verdict.hpp"

namespace exphull {

/// Subvariety of G_a^n x G_m^n: an ideal in x1..xn, y1..yn with every y
/// inverted, plus optional parameter coordinates (symbolic coefficients,
/// algebraically independent; starred parameters are units). Dimensions are
/// relative to the parameter field.
struct AVariety {
    int n = 0;
    Ideal ideal; ///< vars x1..xn, y1..yn, then parameters
    std::vector<std::string> params;
    std::vector<bool> param_unit;
};

AVariety make_variety(int n, std::vector<LaurentPoly> gens,
                      std::vector<std::string> params = {}, std::vector<bool> param_unit = {});

std::vector<std::string> variety_vars(int n, const std::vector<std::string>& params);

/// Dimension over the parameter field; nullopt when empty.
std::optional<int> variety_dimension(const AVariety& v);

/// Image under (x, y) -> (M x, y^M): adjoin u_i - <m_i, x> and the binomial
/// v_i y^{m_i^-} = y^{m_i^+}, eliminate x and y, saturate in the v's.
AVariety matrix_act(const AVariety& v, const IntMatrix& m);

/// Bounded rotundity: dim M(V) >= rk M for one Hermite representative of
/// every rational row space generated by integer matrices of entry height
/// <= height, all ranks 1..n.
Verdict is_rotund_bounded(const AVariety& v, long height);

/// Bounded freeness: every rank-1 action of height <= height has additive and
/// multiplicative projections of dimension 1.
Verdict is_free_bounded(const AVariety& v, long height);

/// Projection to the multiplicative coordinates (eliminates all x's).
Ideal mult_projection(const AVariety& v);

/// Membership of a configuration point in the dagger set: the point rows are
/// Q-combinations of config pairs (integer after clearing; kernel shifts are
/// components on the kernel pair); substitution into every generator must land
/// in the locus and the rows must be Q-linearly independent over `base`
/// modulo the declared relations.
bool dagger_member(const AVariety& v, const GammaConfig& cfg, const QMatrix& point,
                   const SubspaceSpec& base);

/// A coset of a subtorus in normal form: character rows m_k with y^{m_k} = c_k
/// on the coset, and a unimodular change of coordinates whose leading rows are
/// the characters (so the coset reads z_k = c_k).
struct CosetForm {
    IntMatrix characters;
    std::vector<LaurentPoly> constants; ///< values in the parameter coordinates
    IntMatrix change_of_coords;
};

/// Searches characters of height <= height whose monomial is constant modulo
/// w; succeeds when the discovered lattice has rank codim(w) and the binomial
/// ideal reproduces w exactly.
std::optional<CosetForm> coset_normal_form(const Ideal& w, long height);

} // namespace exphull

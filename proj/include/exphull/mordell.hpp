#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exphull/gamma.hpp"
#include "exphull/ideal.hpp"
#include "exphull/intmat.hpp"
#include "exphull/radical.hpp"
#include "exphull/verdict.hpp"

namespace exphull {

/// One coordinate of a group element: an exact radical times a Laurent
/// monomial in the coordinates of an optional ambient configuration.
struct GroupCoord {
    RadicalValue rad;
    std::map<int, Rational> mono; ///< config coordinate index -> exponent

    GroupCoord mul(const GroupCoord& o) const;
    GroupCoord pow(const Rational& e) const;
    bool is_symbolic() const { return !mono.empty(); }
    bool operator==(const GroupCoord& o) const = default;
    bool operator<(const GroupCoord& o) const;
    std::string to_string(const GammaConfig* cfg) const;
};

GroupCoord coord_from_rational(const Rational& q);

/// Finitely generated subgroup of G_m^n presented by generator tuples, with a
/// division depth d: enumeration admits formal d!-th roots of the generators.
/// Symbolic coordinates (monomials in a configuration's y-coordinates) refer
/// to `config`.
struct FiniteRankGroup {
    int n = 0;
    std::vector<std::vector<GroupCoord>> generators;
    int depth = 1;
    std::optional<GammaConfig> config;
};

/// Gamma_0 = exp(hull): the y-monomials of the hull's rows (1-tuples over the
/// configuration; unit monomials such as the kernel's are dropped). Rows are
/// cleared to primitive integer rows.
FiniteRankGroup group_from_config(const GammaConfig& cfg, const SubspaceSpec& hull, int depth);

/// A coset translate * {s^Lambda} inside G_m^n: the subgroup is presented by
/// its cocharacter lattice (rows lambda parametrise the subtorus).
struct MLCoset {
    std::vector<GroupCoord> translate;
    IntMatrix cocharacters; ///< rows in Z^n, saturated canonical basis
    std::vector<long> found_exponents; ///< group word that produced the translate
};

struct CosetDecomposition {
    std::vector<MLCoset> cosets;
};

/// True iff the group element given by numerators k (exponents k_i/depth!)
/// lies in the variety of w.
bool group_element_in(const Ideal& w, const FiniteRankGroup& grp, const std::vector<long>& numerators);

/// Enumerates group words of exponent height <= word (denominators depth!),
/// keeps those in w, greedily grows a cocharacter lattice of height <= height
/// with translate * subtorus still inside w, and returns the inclusion-maximal
/// cosets found, deduplicated.
CosetDecomposition find_cosets_bounded(const Ideal& w, const FiniteRankGroup& grp, long word,
                                       long height);

/// Exhaustive word-bounded check that membership in w coincides with
/// membership in some listed coset.
Verdict verify_decomposition(const Ideal& w, const FiniteRankGroup& grp,
                             const CosetDecomposition& dec, long word);

/// Values of the character monomial on each coset translate; the character
/// must annihilate every selected coset's cocharacter lattice. Duplicates are
/// merged; values are sorted for determinism.
std::vector<GroupCoord> coset_constants(const CosetDecomposition& dec,
                                        const std::vector<Integer>& character);

/// True iff the element lies in translate * subtorus(cocharacters): every
/// character annihilating the cocharacter lattice takes the same value on
/// both.
bool coset_contains(const MLCoset& coset, const std::vector<GroupCoord>& element,
                    const std::optional<GammaConfig>& cfg);

/// Parametrised containment translate * subtorus inside the variety of w
/// (ideal membership with fresh torus parameters for the subtorus).
bool coset_in_variety(const Ideal& w, const MLCoset& coset, const std::optional<GammaConfig>& cfg);

std::vector<GroupCoord> group_element(const FiniteRankGroup& grp, const std::vector<long>& numerators);

} // namespace exphull

#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exphull/laurent.hpp"

namespace exphull {

/// Monomial order tag. Elimination orders put the first `elim_block`
/// variables in a separate leading block (degrevlex within each block), so a
/// Groebner basis contracts to the trailing block.
struct TermOrder {
    enum Kind { Lex, DegRevLex, Elim };
    Kind kind = DegRevLex;
    int elim_block = 0;

    static TermOrder lex() { return {Lex, 0}; }
    static TermOrder degrevlex() { return {DegRevLex, 0}; }
    static TermOrder elim(int block) { return {Elim, block}; }

    /// -1, 0, +1 for a < b, a == b, a > b in this order.
    int compare(const ExpVec& a, const ExpVec& b) const;
    std::string tag() const;
};

/// Global reduction-step budget for Groebner runs (default 10^6). Exceeding
/// it raises ResourceLimitError.
void set_groebner_budget(long steps);
long groebner_budget();

/// Ideal of a Laurent polynomial ring presented by polynomial generators.
/// Variables listed in `inverted` are torus coordinates: all queries
/// (membership, dimension, elimination, equality) refer to the saturation of
/// the generators by the product of the inverted variables. Immutable after
/// construction; the Groebner cache is filled lazily under a lock.
class Ideal {
public:
    Ideal() : Ideal({}, {}) {}
    /// Generators may have negative exponents on inverted variables only;
    /// they are cleared to polynomials by unit monomials.
    Ideal(std::vector<std::string> vars, std::vector<LaurentPoly> gens,
          std::set<std::string> inverted = {});

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<LaurentPoly>& generators() const { return gens_; }
    const std::set<std::string>& inverted() const { return inverted_; }
    bool is_inverted(int var) const;

    /// Reduced Groebner basis of the *saturated* ideal under `order`.
    const std::vector<LaurentPoly>& basis(const TermOrder& order = TermOrder::degrevlex()) const;

    /// Equivalent ideal with the basis for `order` cached (idempotent).
    Ideal groebner(const TermOrder& order = TermOrder::degrevlex()) const;

    /// Remainder of p on division by basis(order).
    LaurentPoly normal_form(const LaurentPoly& p, const TermOrder& order = TermOrder::degrevlex()) const;

    /// Saturated membership: p in (I : (prod inverted)^inf).
    bool contains(const LaurentPoly& p) const;

    /// Proper after saturation?
    bool is_proper() const;

    /// Krull dimension via maximal independent variable sets modulo the
    /// leading-term ideal; nullopt when the (saturated) ideal is the unit
    /// ideal ("empty").
    std::optional<int> dimension() const;

    /// Contraction to the kept variables (a subset of vars, in their current
    /// relative order); saturation is applied first. Inverted flags are
    /// inherited.
    Ideal eliminate(const std::vector<std::string>& keep) const;

    /// Same saturated ideal? (mutual membership of generators)
    bool same_ideal(const Ideal& other) const;

private:
    struct Cache;

    std::vector<std::string> vars_;
    std::vector<LaurentPoly> gens_; ///< polynomial (cleared) generators
    std::set<std::string> inverted_;
    std::shared_ptr<Cache> cache_;

    const std::vector<LaurentPoly>& saturated_gens() const;
};

/// Reduced Groebner basis of polynomial generators (no saturation); exposed
/// for tests and the handful of callers that work with plain ideals.
std::vector<LaurentPoly> buchberger(const std::vector<LaurentPoly>& gens, const TermOrder& order);

/// Remainder of p modulo a (not necessarily Groebner) basis under `order`.
LaurentPoly reduce_modulo(const LaurentPoly& p, const std::vector<LaurentPoly>& basis,
                          const TermOrder& order);

} // namespace exphull

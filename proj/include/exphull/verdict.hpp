#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exphull/intmat.hpp"
#include "exphull/qmatrix.hpp"

namespace exphull {

/// Outcome of a bounded search. Fails always carries a witness that re-checks
/// as a genuine counterexample at the stated bound.
enum class Status { Holds, Fails, UnknownUpTo };

struct Verdict {
    Status status = Status::Holds;
    long bound = 0; ///< the height/word bound that was searched

    std::optional<QMatrix> witness_subspace;        ///< rows over a config pair space
    std::optional<IntMatrix> witness_matrix;        ///< integer matrix witnesses
    std::optional<std::vector<long>> witness_exponents; ///< group-word witnesses
    std::optional<Rational> witness_value;          ///< e.g. the offending delta
    std::string note;

    static Verdict holds(long bound, std::string note = "") {
        return {Status::Holds, bound, {}, {}, {}, {}, std::move(note)};
    }
    static Verdict unknown(long bound, std::string note = "") {
        return {Status::UnknownUpTo, bound, {}, {}, {}, {}, std::move(note)};
    }
    bool is_holds() const { return status == Status::Holds; }
    bool is_fails() const { return status == Status::Fails; }
};

/// Search parallelism used by the bounded checkers; results are independent
/// of the setting (deterministic merge).
void set_search_threads(int n);
int search_threads();

} // namespace exphull

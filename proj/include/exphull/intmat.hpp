#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exphull/rational.hpp"

namespace exphull {

/// Dense integer matrix with exact arbitrary-precision entries. Immutable in
/// spirit: operations return new matrices.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Integer(0)) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
    static IntMatrix from_long_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Integer& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Integer& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    std::vector<Integer> row(int i) const;

    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    int rank() const;
    bool is_unimodular() const;
    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Integer> a_;
};

struct HermiteResult {
    IntMatrix h; ///< row Hermite form: u * m == h
    IntMatrix u; ///< unimodular
};

struct SmithResult {
    IntMatrix s; ///< diagonal with successive divisibility: u * m * v == s
    IntMatrix u;
    IntMatrix v;
};

/// Row-style Hermite normal form. Nonzero rows come first, pivots positive,
/// entries above each pivot reduced into [0, pivot).
HermiteResult hermite(const IntMatrix& m);

SmithResult smith(const IntMatrix& m);

struct BezoutResult {
    Integer g, u, v; ///< u*a + v*b == g == gcd(a,b) >= 0
};

BezoutResult bezout(const Integer& a, const Integer& b);

/// Basis of the integer kernel {v : m v = 0}, returned as matrix columns.
/// The basis spans a saturated lattice (it comes from a unimodular transform).
IntMatrix integer_kernel(const IntMatrix& m);

/// Basis (as rows) of the saturation of the row lattice of m, i.e. of
/// (Q-rowspace of m) intersected with Z^cols.
IntMatrix row_saturation(const IntMatrix& m);

/// Canonical representative of the rational row space of m: Hermite form of
/// the saturation, zero rows dropped. Two matrices have the same Q-row space
/// iff their canonical representatives are equal.
IntMatrix rowspace_canonical(const IntMatrix& m);

/// Extends a saturated primitive lattice basis (rows of s, full row rank) to
/// a unimodular matrix whose first s.rows() rows span the same lattice.
IntMatrix complete_to_unimodular(const IntMatrix& s);

/// Divides the vector by the gcd of its entries (no-op on the zero vector);
/// the sign is normalised so the first nonzero entry is positive.
std::vector<Integer> primitive_vector(std::vector<Integer> v);

} // namespace exphull

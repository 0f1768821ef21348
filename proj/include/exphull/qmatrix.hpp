#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exphull/intmat.hpp"
#include "exphull/rational.hpp"

namespace exphull {

/// Dense exact rational matrix; used for subspace bases, the case-2 matrix N
/// and its powers, and rational row reductions.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rational(0)) {}
    static QMatrix identity(int n);
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static QMatrix from_int(const IntMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    std::vector<Rational> row(int i) const;

    QMatrix transpose() const;
    QMatrix mul(const QMatrix& other) const;
    QMatrix add(const QMatrix& other) const;
    QMatrix scale(const Rational& c) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    QMatrix pow(const Integer& e) const; ///< square matrices, e >= 0
    bool operator==(const QMatrix& other) const = default;

    int rank() const;
    /// Reduced row echelon form; canonical for the row space.
    QMatrix rref() const;
    /// Stable textual key of rref(); equal iff same row space.
    std::string rowspace_key() const;
    std::string to_string() const;

    /// Appends the rows of other below this.
    QMatrix stack(const QMatrix& other) const;

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

/// rank(stack(rows, base)) - rank(base): the dimension rows add over base.
int rank_over(const QMatrix& rows, const QMatrix& base);

/// True iff v lies in the row space of m.
bool in_rowspace(const std::vector<Rational>& v, const QMatrix& m);

/// Clears denominators and common factors: the primitive integer vector
/// spanning the same line as v (zero vector maps to zero).
std::vector<Integer> primitive_integer_row(const std::vector<Rational>& v);

} // namespace exphull

#include "exphull/qmatrix.hpp"

#include <sstream>

#include "exphull/errors.hpp"

namespace exphull {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw DomainError("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::from_int(const IntMatrix& m) {
    QMatrix q(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) q.at(i, j) = Rational(m.at(i, j));
    return q;
}

std::vector<Rational> QMatrix::row(int i) const {
    std::vector<Rational> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
    return out;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix QMatrix::mul(const QMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
    QMatrix p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) p.at(i, j) += at(i, k) * o.at(k, j);
        }
    return p;
}

QMatrix QMatrix::add(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix sum shape mismatch");
    QMatrix p = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) p.at(i, j) += o.at(i, j);
    return p;
}

QMatrix QMatrix::scale(const Rational& c) const {
    QMatrix p = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) p.at(i, j) *= c;
    return p;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DomainError("matrix-vector shape mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

QMatrix QMatrix::pow(const Integer& e) const {
    if (rows_ != cols_) throw DomainError("pow of non-square matrix");
    if (e < 0) throw DomainError("negative matrix power");
    QMatrix result = identity(rows_);
    QMatrix base = *this;
    Integer n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = result.mul(base);
        n >>= 1;
        if (n > 0) base = base.mul(base);
    }
    return result;
}

QMatrix QMatrix::rref() const {
    QMatrix m = *this;
    int lead = 0;
    std::vector<int> pivot_rows;
    for (int col = 0; col < cols_ && lead < rows_; ++col) {
        int p = -1;
        for (int i = lead; i < rows_; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != lead)
            for (int j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(lead, j));
        Rational inv = Rational(1) / m.at(lead, col);
        for (int j = 0; j < cols_; ++j) m.at(lead, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == lead || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (int j = 0; j < cols_; ++j) m.at(i, j) -= f * m.at(lead, j);
        }
        ++lead;
    }
    // drop zero rows for canonicity
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < rows_; ++i) {
        bool nz = false;
        for (int j = 0; j < cols_; ++j)
            if (m.at(i, j) != 0) { nz = true; break; }
        if (nz) rows.push_back(m.row(i));
    }
    if (rows.empty()) return QMatrix(0, cols_);
    return from_rows(rows);
}

int QMatrix::rank() const { return rref().rows(); }

std::string QMatrix::rowspace_key() const {
    QMatrix r = rref();
    std::ostringstream os;
    os << cols_ << "|";
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) os << r.at(i, j).get_str() << ",";
    return os.str();
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

QMatrix QMatrix::stack(const QMatrix& other) const {
    if (rows_ == 0) return other;
    if (other.rows() == 0) return *this;
    if (cols_ != other.cols()) throw DomainError("stack shape mismatch");
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < rows_; ++i) rows.push_back(row(i));
    for (int i = 0; i < other.rows(); ++i) rows.push_back(other.row(i));
    return from_rows(rows);
}

int rank_over(const QMatrix& rows, const QMatrix& base) {
    return rows.stack(base).rank() - base.rank();
}

bool in_rowspace(const std::vector<Rational>& v, const QMatrix& m) {
    QMatrix ext = m.stack(QMatrix::from_rows({v}));
    return ext.rank() == m.rank();
}

std::vector<Integer> primitive_integer_row(const std::vector<Rational>& v) {
    Integer den = common_denominator(v);
    std::vector<Integer> z;
    z.reserve(v.size());
    for (const auto& q : v) z.push_back(Integer(q.get_num() * (den / q.get_den())));
    return primitive_vector(std::move(z));
}

} // namespace exphull

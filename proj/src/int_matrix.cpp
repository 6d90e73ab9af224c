#include "etkk/int_matrix.hpp"

#include "etkk/error.hpp"

#include <sstream>

namespace etkk {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw Error(ErrorKind::DimensionMismatch, "entry count does not match matrix shape");
}

IntMatrix IntMatrix::of(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t m = rows.size();
    std::size_t n = m == 0 ? 0 : rows.begin()->size();
    IntMatrix a(m, n);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
        std::size_t j = 0;
        for (long x : r)
            a.at(i, j++) = x;
        ++i;
    }
    return a;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        a.at(i, i) = 1;
    return a;
}

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

IntMatrix IntMatrix::col_vector(const IntVec& v) {
    IntMatrix a(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        a.at(i, 0) = v[i];
    return a;
}

IntMatrix IntMatrix::row_vector(const IntVec& v) {
    IntMatrix a(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        a.at(0, j) = v[j];
    return a;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::col(std::size_t j) const {
    IntMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i)
        c.at(i, 0) = at(i, j);
    return c;
}

IntVec IntMatrix::col_vec(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = at(i, j);
    return v;
}

IntVec IntMatrix::row_vec(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        v[j] = at(i, j);
    return v;
}

void IntMatrix::set_col(std::size_t j, const IntVec& v) {
    for (std::size_t i = 0; i < rows_; ++i)
        at(i, j) = v[i];
}

IntMatrix IntMatrix::cols_slice(std::size_t j0, std::size_t j1) const {
    IntMatrix s(rows_, j1 - j0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = j0; j < j1; ++j)
            s.at(i, j - j0) = at(i, j);
    return s;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : data_)
        if (x != 0)
            return false;
    return true;
}

bool IntMatrix::is_nonnegative() const {
    for (const Int& x : data_)
        if (x < 0)
            return false;
    return true;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && at(i, j) != 0)
                return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap(at(r, i), at(r, j));
}

void IntMatrix::row_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        at(i, c) -= q * at(j, c);
}

void IntMatrix::col_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        at(r, i) -= q * at(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c)
        at(i, c) = -at(i, c);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r)
        at(r, j) = -at(r, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
    }
    os << "] (" << rows_ << "x" << cols_ << ")";
    return os.str();
}

static void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, std::string("shape mismatch in ") + op);
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b, "matrix addition");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b, "matrix subtraction");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a) {
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = -a.at(i, j);
    return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "inner dimensions do not match in product");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntMatrix operator*(const Int& c, const IntMatrix& a) {
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.at(i, j) = c * a.at(i, j);
    return r;
}

IntVec operator*(const IntMatrix& a, const IntVec& v) {
    if (a.cols() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector dimensions do not match");
    IntVec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r[i] += a.at(i, j) * v[j];
    return r;
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

IntVec vec_scale(const Int& c, const IntVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = c * v[i];
    return r;
}

bool vec_is_zero(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0)
            return false;
    return true;
}

bool vec_is_nonnegative(const IntVec& v) {
    for (const Int& x : v)
        if (x < 0)
            return false;
    return true;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace etkk

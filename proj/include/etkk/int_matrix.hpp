#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace etkk {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

// Dense row-major matrix of arbitrary-precision integers.
// Matrices with zero rows and/or zero columns are legal values; every
// operation below is defined on them (products with an empty inner
// dimension are zero matrices of the outer shape).
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);
    // Row-major literal, e.g. IntMatrix::of({{1,-1,0}}).
    static IntMatrix of(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols);
    static IntMatrix col_vector(const IntVec& v);
    static IntMatrix row_vector(const IntVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Int>& entries() const { return data_; }

    IntMatrix transpose() const;
    IntMatrix col(std::size_t j) const;
    IntVec col_vec(std::size_t j) const;
    IntVec row_vec(std::size_t i) const;
    void set_col(std::size_t j, const IntVec& v);

    // Columns [j0, j1).
    IntMatrix cols_slice(std::size_t j0, std::size_t j1) const;

    bool is_zero() const;
    bool is_nonnegative() const;
    bool is_diagonal() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i -= q * row j, col i -= q * col j
    void row_axpy(std::size_t i, std::size_t j, const Int& q);
    void col_axpy(std::size_t i, std::size_t j, const Int& q);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Int& c, const IntMatrix& a);

IntVec operator*(const IntMatrix& a, const IntVec& v);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_scale(const Int& c, const IntVec& v);
bool vec_is_zero(const IntVec& v);
bool vec_is_nonnegative(const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);

std::string to_string(const IntVec& v);

} // namespace etkk

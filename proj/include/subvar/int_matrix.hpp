#pragma once
#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "subvar/errors.hpp"

namespace subvar {

using Int = mpz_class;
using Rat = mpq_class;

/* Dense row-major matrix over arbitrary-precision integers. */
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> vals);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    IntMatrix scaled(const Int& c) const;
    IntMatrix row(std::size_t i) const;
    IntMatrix rows_slice(std::size_t r0, std::size_t r1) const;
    IntMatrix cols_slice(std::size_t c0, std::size_t c1) const;

    void swap_rows(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    /* row i += c * row j */
    void add_row_multiple(std::size_t i, std::size_t j, const Int& c);

    /* "[[1,0],[0,2]]"; stable dedup/sort key */
    std::string str() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix stack_rows(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

struct HnfResult {
    IntMatrix h;  // zero rows dropped
    std::size_t rank = 0;
};

/* Canonical row Hermite normal form of the row span: echelon, positive pivots,
   entries above a pivot reduced into [0, pivot). */
HnfResult hnf(const IntMatrix& m);

struct HnfTransform {
    IntMatrix h;  // full height, zero rows kept
    IntMatrix u;  // unimodular, u*m = h
    std::size_t rank = 0;
};
HnfTransform hnf_with_transform(const IntMatrix& m);

/* Nonzero elementary divisors s1 | s2 | ... | sr, all positive. */
std::vector<Int> snf_divisors(const IntMatrix& m);

/* #{v in (Z/a)^cols : m*v = 0 mod a} = a^(cols-r) * prod gcd(a, s_i). */
Int kernel_count_mod(const IntMatrix& m, const Int& a);

/* Exact determinant (fraction-free elimination); det of the 0x0 matrix is 1. */
Int det(const IntMatrix& m);

/* Exact Pfaffian of a skew-symmetric even-dimensional matrix; Pf()^2 = det. */
Int pfaffian(const IntMatrix& m);

}  // namespace subvar

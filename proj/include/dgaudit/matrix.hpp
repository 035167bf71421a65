// Dense exact matrices over a Field, with deterministic row reduction
// (first-nonzero pivoting) so that every downstream report is reproducible.
#pragma once

#include <optional>
#include <vector>

#include "dgaudit/field.hpp"

namespace dgaudit {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix identity(Field f, std::size_t n);
  static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return fld_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  Matrix transpose() const;
  Matrix mul(const Matrix& o) const;
  Matrix add(const Matrix& o) const;
  Matrix sub(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Matrix negated() const;

  Vec apply(const Vec& x) const;           // this * x
  Matrix column(std::size_t j) const;
  Vec column_vec(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);

  // Stack o to the right / below.
  Matrix hstack(const Matrix& o) const;
  Matrix vstack(const Matrix& o) const;
  // Copy `o` into position (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const Matrix& o);
  Matrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const;

  struct Rref {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column per pivot row
    Matrix reduced;                   // fully reduced row-echelon form
    Matrix kernel;                    // columns form the canonical null-space basis
    Rref(Field f) : reduced(f, 0, 0), kernel(f, 0, 0) {}
  };
  Rref rref() const;

  std::size_t rank() const { return rref().rank; }
  Matrix kernel_basis() const { return rref().kernel; }

  // Solves this * x = b columnwise; the canonical solution assigns zero to
  // every free variable. Returns nullopt if some column of b is not in the
  // column space.
  std::optional<Matrix> solve(const Matrix& b) const;

 private:
  void check_same_field(const Matrix& o) const;

  Field fld_;
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
Vec add_vec(const Field& f, const Vec& a, const Vec& b);
Vec sub_vec(const Field& f, const Vec& a, const Vec& b);
Vec scale_vec(const Field& f, const Scalar& c, const Vec& a);
bool is_zero_vec(const Field& f, const Vec& a);

}  // namespace dgaudit

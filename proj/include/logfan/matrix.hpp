// Dense integer matrices over arbitrary-precision entries. Column-vector
// convention: matrices act on the left, composition g*h applies h first.
#pragma once

#include "logfan/numeric.hpp"

#include <optional>

namespace logfan {

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("IntMat: negative dimension");
  }

  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<IVec>& rows);
  static IntMat from_cols(const std::vector<IVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  IVec row(int i) const;
  IVec col(int j) const;

  IntMat transpose() const;
  IntMat operator*(const IntMat& o) const;
  IVec operator*(const IVec& v) const;
  QVec operator*(const QVec& v) const;
  IntMat operator+(const IntMat& o) const;
  IntMat operator-(const IntMat& o) const;
  bool operator==(const IntMat& o) const = default;
  bool operator<(const IntMat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return a_ < o.a_;
  }

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  // row i += c * row j ; col i += c * col j
  void add_row(int i, int j, const Int& c);
  void add_col(int i, int j, const Int& c);
  void negate_row(int i);
  void negate_col(int j);

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_identity() const;

  Int det() const;           // Bareiss, exact
  bool is_unimodular() const;
  // adj(A) with adj(A)*A = det(A)*I
  IntMat adjugate() const;
  // exact inverse for unimodular matrices
  IntMat inverse_unimodular() const;

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// leading principal minors det(A[0..k][0..k]), k = 1..n
std::vector<Int> leading_principal_minors(const IntMat& a);

// solve A x = b exactly over Q; nullopt when inconsistent.
// When the solution is not unique the returned x is the one produced by
// forward elimination with free variables pinned to 0.
std::optional<QVec> solve_rational(const IntMat& a, const QVec& b);

}  // namespace logfan

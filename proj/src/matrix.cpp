#include "logfan/matrix.hpp"

#include <sstream>

namespace logfan {

std::string to_string(const Int& a) { return a.str(); }

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string to_string(const Rat& q) {
  if (is_integral(q)) return rat_num(q).str();
  return rat_num(q).str() + "/" + rat_den(q).str();
}

std::string to_string(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].str();
  os << ")";
  return os.str();
}

std::string to_string(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ")";
  return os.str();
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IVec>& rows) {
  int r = int(rows.size());
  int c = r ? int(rows[0].size()) : 0;
  IntMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) throw std::invalid_argument("from_rows: ragged input");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::from_cols(const std::vector<IVec>& cols) {
  return from_rows(cols).transpose();
}

IVec IntMat::row(int i) const {
  IVec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

IVec IntMat::col(int j) const {
  IVec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMat*: shape mismatch");
  IntMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

IVec IntMat::operator*(const IVec& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("IntMat*vec: shape mismatch");
  IVec r(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

QVec IntMat::operator*(const QVec& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("IntMat*vec: shape mismatch");
  QVec r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += Rat(at(i, j)) * v[j];
  return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat+: shape mismatch");
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat-: shape mismatch");
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

void IntMat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::add_row(int i, int j, const Int& c) {
  for (int k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMat::add_col(int i, int j, const Int& c) {
  for (int k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

void IntMat::negate_row(int i) {
  for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMat::negate_col(int j) {
  for (int k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

bool IntMat::is_symmetric() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool IntMat::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

// Bareiss fraction-free elimination; every division below is exact.
Int IntMat::det() const {
  if (!is_square()) throw std::invalid_argument("det: not square");
  int n = rows_;
  if (n == 0) return 1;
  IntMat m = *this;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

bool IntMat::is_unimodular() const {
  if (!is_square()) return false;
  Int d = det();
  return d == 1 || d == -1;
}

IntMat IntMat::adjugate() const {
  if (!is_square()) throw std::invalid_argument("adjugate: not square");
  int n = rows_;
  IntMat adj(n, n);
  if (n == 0) return adj;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat minor(n - 1, n - 1);
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;  // adj = transpose of cofactor matrix
        for (int c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(mr, mc++) = at(r, c);
        }
        ++mr;
      }
      Int cof = minor.det();
      adj.at(i, j) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

IntMat IntMat::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: determinant not a unit");
  IntMat adj = adjugate();
  if (d == -1)
    for (int i = 0; i < rows_; ++i) adj.negate_row(i);
  return adj;
}

std::string IntMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

std::vector<Int> leading_principal_minors(const IntMat& a) {
  if (!a.is_square()) throw std::invalid_argument("leading_principal_minors: not square");
  std::vector<Int> out;
  for (int k = 1; k <= a.rows(); ++k) {
    IntMat sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = a.at(i, j);
    out.push_back(sub.det());
  }
  return out;
}

std::optional<QVec> solve_rational(const IntMat& a, const QVec& b) {
  int m = a.rows(), n = a.cols();
  if (int(b.size()) != m) throw std::invalid_argument("solve_rational: shape mismatch");
  // Gaussian elimination on the augmented rational matrix
  std::vector<QVec> w(m, QVec(n + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
    w[i][n] = b[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (w[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(w[r], w[p]);
    Rat inv = Rat(1) / w[r][c];
    for (int j = c; j <= n; ++j) w[r][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || w[i][c] == 0) continue;
      Rat f = w[i][c];
      for (int j = c; j <= n; ++j) w[i][j] -= f * w[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (w[i][n] != 0) return std::nullopt;
  QVec x(n, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = w[i][n];
  return x;
}

}  // namespace logfan

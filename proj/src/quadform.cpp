#include "logfan/quadform.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace logfan {

Rat QuadraticForm::inner(const QVec& x, const QVec& y) const {
  Rat out = 0;
  for (int i = 0; i < n; ++i) {
    Rat row = 0;
    for (int j = 0; j < n; ++j) row += Rat(a.at(i, j)) * y[j];
    out += x[i] * row;
  }
  return out / Rat(den);
}

Rat QuadraticForm::eval(const QVec& x) const { return inner(x, x); }

Rat QuadraticForm::eval(const IVec& x) const { return eval(to_rat(x)); }

QuadraticForm make_form(const IntMat& a, const Int& den) {
  if (!a.is_square()) throw std::invalid_argument("form matrix must be square");
  if (!a.is_symmetric()) throw std::invalid_argument("form matrix must be symmetric");
  if (den <= 0) throw std::invalid_argument("form denominator must be positive");
  QuadraticForm q;
  q.n = a.rows();
  q.a = a;
  q.den = den;

  // rational LDL; positive pivots certify positive definiteness
  std::vector<QVec> m(q.n, QVec(q.n));
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j) m[i][j] = Rat(a.at(i, j)) / Rat(den);
  q.upper.assign(q.n, QVec(q.n, Rat(0)));
  for (int i = 0; i < q.n; ++i) {
    Rat d = m[i][i];
    if (d <= 0) throw std::invalid_argument("form is not positive definite");
    q.diag.push_back(d);
    for (int j = i + 1; j < q.n; ++j) q.upper[i][j] = m[i][j] / d;
    for (int k = i + 1; k < q.n; ++k)
      for (int l = i + 1; l < q.n; ++l) m[k][l] -= m[i][k] * m[i][l] / d;
  }
  return q;
}

namespace {

// largest integer f with f <= sqrt(r) for r >= 0
Int floor_sqrt_rat(const Rat& r) {
  Int p = rat_num(r), q = rat_den(r);
  if (p <= 0) return 0;
  // sqrt(p/q) = sqrt(p q) / q
  Int pq = p * q;
  Int f = boost::multiprecision::sqrt(pq);
  return f / q;
}

}  // namespace

std::vector<IVec> points_in_ellipsoid(const QuadraticForm& q, const QVec& center,
                                      const Rat& bound, int step,
                                      const IVec* residue) {
  if (static_cast<int>(center.size()) != q.n)
    throw std::invalid_argument("ellipsoid center has wrong dimension");
  if (step < 1) throw std::invalid_argument("ellipsoid step must be positive");
  std::vector<IVec> out;
  if (bound < 0) return out;
  IVec x(q.n, Int(0));
  QVec z(q.n, Rat(0));  // z[j] = x[j] - center[j] for settled coordinates

  std::function<void(int, const Rat&)> descend = [&](int i, const Rat& budget) {
    if (i < 0) {
      out.push_back(x);
      return;
    }
    Rat mu = 0;
    for (int j = i + 1; j < q.n; ++j) mu += q.upper[i][j] * z[j];
    // need diag[i] * (x_i - center_i + mu)^2 <= budget
    Rat mid = center[i] - mu;
    Rat radius2 = budget / q.diag[i];
    Int f = floor_sqrt_rat(radius2) + 1;  // over-approximation of the halfwidth
    Int lo = ceil_rat(mid - Rat(f));
    Int hi = floor_rat(mid + Rat(f));
    if (step > 1 && residue) {
      Int want = ((*residue)[i] % step + step) % step;
      Int shift = ((want - lo) % step + step) % step;
      lo += shift;
    }
    for (Int v = lo; v <= hi; v += step) {
      Rat t = Rat(v) - mid;
      Rat term = q.diag[i] * t * t;
      if (term > budget) continue;
      x[i] = v;
      z[i] = Rat(v) - center[i];
      descend(i - 1, budget - term);
    }
  };
  descend(q.n - 1, bound);
  std::sort(out.begin(), out.end());
  return out;
}

CosetMinimum coset_minimum(const QuadraticForm& q, const IVec& residue_mod_2) {
  if (static_cast<int>(residue_mod_2.size()) != q.n)
    throw std::invalid_argument("coset residue has wrong dimension");
  IVec seed(q.n, Int(0));
  bool nonzero = false;
  for (int i = 0; i < q.n; ++i) {
    seed[i] = ((residue_mod_2[i] % 2) + 2) % 2;
    if (seed[i] != 0) nonzero = true;
  }
  if (!nonzero) seed[0] = 2;  // minimum of the even sublattice minus the origin
  QVec origin(q.n, Rat(0));
  auto pts = points_in_ellipsoid(q, origin, q.eval(seed), 2, &seed);
  CosetMinimum best;
  best.value = q.eval(seed);
  for (const auto& p : pts) {
    if (is_zero(p)) continue;
    Rat v = q.eval(p);
    if (v < best.value) best.value = v;
  }
  for (const auto& p : pts) {
    if (is_zero(p)) continue;
    if (q.eval(p) == best.value) best.vectors.push_back(p);
  }
  return best;
}

}  // namespace logfan

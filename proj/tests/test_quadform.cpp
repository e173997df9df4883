#include "logfan/quadform.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

using namespace logfan;

namespace {

IntMat mat2(Int a, Int b, Int c, Int d) {
  IntMat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// random positive definite integer matrix g^T g + I
IntMat random_pd(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> entry(-2, 2);
  IntMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = entry(rng);
  IntMat a = g.transpose() * g;
  for (int i = 0; i < n; ++i) a.at(i, i) += 1;
  return a;
}

Int floor_sqrt(const Rat& r) {
  Int p = rat_num(r), q = rat_den(r);
  if (p <= 0) return 0;
  Int pq = p * q;
  return Int(boost::multiprecision::sqrt(pq)) / q;
}

// rigorous per-coordinate box: x_i^2 <= bound * den * adj(a)_ii / det(a)
std::vector<IVec> brute_ellipsoid(const QuadraticForm& q, const QVec& center,
                                  const Rat& bound) {
  IntMat adj = q.a.adjugate();
  Int det = q.a.det();
  std::vector<IVec> out;
  IVec x(q.n);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == q.n) {
      QVec z(q.n);
      for (int k = 0; k < q.n; ++k) z[k] = Rat(x[k]) - center[k];
      if (q.eval(z) <= bound) out.push_back(x);
      return;
    }
    Rat r2 = bound * Rat(q.den) * Rat(adj.at(i, i)) / Rat(det);
    Int w = floor_sqrt(r2) + 1;
    Int lo = ceil_rat(center[i] - Rat(w));
    Int hi = floor_rat(center[i] + Rat(w));
    for (Int v = lo; v <= hi; ++v) {
      x[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("form validation") {
  CHECK_THROWS_AS(make_form(mat2(1, 2, 3, 1)), std::invalid_argument);   // asymmetric
  CHECK_THROWS_AS(make_form(mat2(1, 2, 2, 1)), std::invalid_argument);   // indefinite
  CHECK_THROWS_AS(make_form(mat2(0, 0, 0, 1)), std::invalid_argument);   // degenerate
  IntMat neg(1, 1);
  neg.at(0, 0) = -1;
  CHECK_THROWS_AS(make_form(neg), std::invalid_argument);
  CHECK_THROWS_AS(make_form(IntMat::identity(2), 0), std::invalid_argument);
  CHECK_NOTHROW(make_form(mat2(2, 1, 1, 2)));
}

TEST_CASE("exact evaluation and the polarizing inner product") {
  QuadraticForm q = make_form(mat2(2, 1, 1, 2), 2);
  CHECK(q.eval(IVec{1, 0}) == Rat(1));
  CHECK(q.eval(IVec{1, 1}) == Rat(3));
  CHECK(q.inner(QVec{Rat(1), Rat(0)}, QVec{Rat(0), Rat(1)}) == Rat(1, 2));
  // q(x + y) = q(x) + 2<x,y> + q(y)
  QVec x{Rat(1, 3), Rat(2)};
  QVec y{Rat(-1), Rat(1, 2)};
  QVec s{x[0] + y[0], x[1] + y[1]};
  CHECK(q.eval(s) == q.eval(x) + 2 * q.inner(x, y) + q.eval(y));
}

TEST_CASE("ellipsoid enumeration matches the box oracle") {
  std::mt19937 rng(991);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<int> numer(-5, 5);
  std::uniform_int_distribution<int> denom(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    int n = dim(rng);
    QuadraticForm q = make_form(random_pd(rng, n), denom(rng));
    QVec center(n);
    for (int i = 0; i < n; ++i) center[i] = Rat(numer(rng), denom(rng));
    // bound that always captures at least one point
    IVec probe(n);
    for (int i = 0; i < n; ++i) probe[i] = numer(rng) / 2;
    QVec z(n);
    for (int i = 0; i < n; ++i) z[i] = Rat(probe[i]) - center[i];
    Rat bound = q.eval(z) + Rat(1, 2);

    auto fast = points_in_ellipsoid(q, center, bound);
    auto slow = brute_ellipsoid(q, center, bound);
    REQUIRE(fast == slow);
    CHECK(std::find(fast.begin(), fast.end(), probe) != fast.end());
  }
}

TEST_CASE("parity-restricted enumeration") {
  std::mt19937 rng(992);
  std::uniform_int_distribution<int> numer(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + trial % 3;
    QuadraticForm q = make_form(random_pd(rng, n));
    QVec center(n, Rat(0));
    Rat bound = Rat(10 + trial % 7);
    IVec residue(n);
    for (int i = 0; i < n; ++i) residue[i] = numer(rng);
    auto fast = points_in_ellipsoid(q, center, bound, 2, &residue);
    std::vector<IVec> slow;
    for (const auto& p : brute_ellipsoid(q, center, bound)) {
      bool match = true;
      for (int i = 0; i < n; ++i)
        if (((p[i] - residue[i]) % 2 + 2) % 2 != 0) match = false;
      if (match) slow.push_back(p);
    }
    REQUIRE(fast == slow);
  }
}

TEST_CASE("coset minima: hexagonal and cubic lattices") {
  QuadraticForm hex = make_form(mat2(2, 1, 1, 2));
  auto c10 = coset_minimum(hex, IVec{1, 0});
  CHECK(c10.value == Rat(2));
  CHECK(c10.vectors == std::vector<IVec>{{-1, 0}, {1, 0}});
  auto c11 = coset_minimum(hex, IVec{1, 1});
  CHECK(c11.value == Rat(2));
  CHECK(c11.vectors == std::vector<IVec>{{-1, 1}, {1, -1}});

  QuadraticForm cube = make_form(IntMat::identity(2));
  auto d11 = coset_minimum(cube, IVec{1, 1});
  CHECK(d11.value == Rat(2));
  CHECK(d11.vectors.size() == 4);
}

TEST_CASE("coset minima match brute force") {
  std::mt19937 rng(993);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 3;
    QuadraticForm q = make_form(random_pd(rng, n), 1 + trial % 2);
    for (long mask = 1; mask < (1L << n); ++mask) {
      IVec res(n, Int(0));
      for (int i = 0; i < n; ++i)
        if (mask & (1L << i)) res[i] = 1;
      auto got = coset_minimum(q, res);
      // brute force inside a ball that surely contains the minimum
      QVec origin(n, Rat(0));
      std::vector<IVec> cands;
      Rat best = -1;
      for (const auto& p : brute_ellipsoid(q, origin, q.eval(res))) {
        bool match = !is_zero(p);
        for (int i = 0; i < n && match; ++i)
          if (((p[i] - res[i]) % 2 + 2) % 2 != 0) match = false;
        if (!match) continue;
        Rat v = q.eval(p);
        if (best < 0 || v < best) best = v;
      }
      for (const auto& p : brute_ellipsoid(q, origin, best)) {
        bool match = !is_zero(p);
        for (int i = 0; i < n && match; ++i)
          if (((p[i] - res[i]) % 2 + 2) % 2 != 0) match = false;
        if (match && q.eval(p) == best) cands.push_back(p);
      }
      CHECK(got.value == best);
      CHECK(got.vectors == cands);
    }
  }
}

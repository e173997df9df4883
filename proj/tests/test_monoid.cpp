#include "doctest.h"

#include "logfan/monoid.hpp"

#include <random>
#include <set>

using namespace logfan;

namespace {

IVec v2(int a, int b) { return IVec{Int(a), Int(b)}; }
IVec v3(int a, int b, int c) { return IVec{Int(a), Int(b), Int(c)}; }

MonoidHom scaling_hom(int m) {
  // N -> N, 1 -> m on group level; the negative-control family
  RationalCone ray = cone_from_generators(1, Side::M, {IVec{Int(1)}});
  MonoidHom f;
  f.source = hilbert_basis(ray);
  f.target = f.source;
  f.gp_basis = IntMat::identity(1);
  f.gp_matrix = IntMat(1, 1);
  f.gp_matrix.at(0, 0) = m;
  return f;
}

}  // namespace

TEST_CASE("hilbert basis of a singular sector dual") {
  RationalCone sigma = cone_from_generators(2, Side::N, {v2(1, 0), v2(1, 2)});
  AffineMonoid m = hilbert_basis(dual_cone(sigma));
  CHECK(m.unit_basis.empty());
  CHECK(m.hilbert == std::vector<IVec>{v2(0, 1), v2(1, 0), v2(2, -1)});
}

TEST_CASE("hilbert basis of a halfplane") {
  RationalCone hp = cone_from_generators(2, Side::M, {v2(1, 0), v2(-1, 0), v2(0, 1)});
  AffineMonoid m = hilbert_basis(hp);
  CHECK(m.unit_basis == std::vector<IVec>{v2(1, 0)});
  CHECK(m.pointed_gens == std::vector<IVec>{v2(0, 1)});
  CHECK(m.hilbert == std::vector<IVec>{v2(1, 0), v2(-1, 0), v2(0, 1)});
}

TEST_CASE("interval cones carry free rank-two monoids") {
  for (int mm : {0, 1, 5, -3}) {
    RationalCone sigma = cone_from_generators(2, Side::N, {v2(mm, 1), v2(mm + 1, 1)});
    AffineMonoid mon = hilbert_basis(dual_cone(sigma));
    REQUIRE(mon.hilbert.size() == 2);
    std::set<IVec> hb(mon.hilbert.begin(), mon.hilbert.end());
    std::set<IVec> expect{v2(1, -mm), v2(-1, mm + 1)};
    CHECK(hb == expect);
    // pi = u * v, uniquely
    auto fib = minimal_fiber(mon, v2(0, 1));
    REQUIRE(fib.size() == 1);
    CHECK(fib[0] == std::vector<Int>{1, 1});
  }
}

TEST_CASE("square cone monoid and its two uniformizer monomials") {
  RationalCone sigma =
      cone_from_generators(3, Side::N, {v3(0, 0, 1), v3(1, 0, 1), v3(0, 1, 1), v3(1, 1, 1)});
  AffineMonoid mon = hilbert_basis(dual_cone(sigma));
  std::set<IVec> hb(mon.hilbert.begin(), mon.hilbert.end());
  std::set<IVec> expect{v3(1, 0, 0), v3(0, 1, 0), v3(-1, 0, 1), v3(0, -1, 1)};
  CHECK(hb == expect);
  auto fib = minimal_fiber(mon, v3(0, 0, 1));
  REQUIRE(fib.size() == 2);
  // each monomial is a product of two complementary generators
  std::set<std::set<size_t>> supports;
  for (const auto& e : fib) {
    std::set<size_t> s;
    Int total = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      total += e[i];
      if (e[i] != 0) s.insert(i);
    }
    CHECK(total == 2);
    CHECK(s.size() == 2);
    supports.insert(s);
  }
  CHECK(supports.size() == 2);
  std::set<size_t> seen;
  for (const auto& s : supports) seen.insert(s.begin(), s.end());
  CHECK(seen.size() == 4);
}

TEST_CASE("vertex cone monoid: units times a free parameter") {
  for (int mm : {0, 2}) {
    RationalCone sigma = cone_from_generators(2, Side::N, {v2(mm, 1)});
    AffineMonoid mon = hilbert_basis(dual_cone(sigma));
    CHECK(mon.unit_basis == std::vector<IVec>{v2(1, -mm)});
    CHECK(mon.pointed_gens.size() == 1);
    auto fib = minimal_fiber(mon, v2(0, 1));
    REQUIRE(fib.size() == 1);
    // pi is the pointed generator alone, no unit factors
    for (int j = 0; j < 2; ++j) CHECK(fib[0][j] == 0);
    CHECK(fib[0][2] == 1);
  }
}

TEST_CASE("criterion map of a smooth sector") {
  RationalCone sigma = cone_from_generators(2, Side::N, {v2(1, 0), v2(1, 2)});
  MonoidHom f = f_sigma_dual(sigma);
  CHECK(f.gp_basis.is_identity());
  CHECK(f.gp_matrix.at(0, 0) == 0);
  CHECK(f.gp_matrix.at(1, 0) == 1);
  KatoResult r = kato_log_smooth_check(f);
  CHECK(r.ok());
  CHECK(r.injective);
  CHECK(r.cokernel.free_rank == 1);
}

TEST_CASE("height outside the dual cone is rejected") {
  RationalCone sigma = cone_from_generators(2, Side::N, {v2(1, -1), v2(1, 0)});
  CHECK_THROWS_AS(f_sigma_dual(sigma), HeightError);
}

TEST_CASE("negative controls fail torsion freeness with the right divisor") {
  for (int m = 2; m <= 6; ++m) {
    KatoResult r = kato_log_smooth_check(scaling_hom(m));
    CHECK(r.verdict == KatoVerdict::fails_torsion_free);
    REQUIRE(r.cokernel.torsion.size() == 1);
    CHECK(r.cokernel.torsion[0] == m);
  }
  KatoResult ok = kato_log_smooth_check(scaling_hom(1));
  CHECK(ok.ok());
  KatoResult zero = kato_log_smooth_check(scaling_hom(0));
  CHECK(zero.verdict == KatoVerdict::fails_injectivity);
}

TEST_CASE("general criterion mode tolerates torsion prime to the residue char") {
  KatoResult strict = kato_log_smooth_check(scaling_hom(3));
  CHECK_FALSE(strict.ok());
  KatoResult tame = kato_log_smooth_check(scaling_hom(3), true, Int(5));
  CHECK(tame.ok());
  KatoResult wild = kato_log_smooth_check(scaling_hom(3), true, Int(3));
  CHECK_FALSE(wild.ok());
  KatoResult char0 = kato_log_smooth_check(scaling_hom(3), true, Int(0));
  CHECK(char0.ok());
}

TEST_CASE("hilbert bases against exhaustive box enumeration") {
  std::mt19937_64 rng(20260816);
  std::uniform_int_distribution<int> entry(-4, 4);
  int done = 0;
  while (done < 25) {
    int dim = 2 + int(rng() % 2);
    std::vector<IVec> gens;
    int ng = 2 + int(rng() % 2);
    for (int i = 0; i < ng; ++i) {
      IVec g(dim);
      for (int j = 0; j < dim; ++j) g[j] = entry(rng);
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.empty()) continue;
    RationalCone c = cone_from_generators(dim, Side::M, gens);
    if (!c.pointed()) continue;  // box oracle below assumes a pointed cone
    ++done;
    AffineMonoid mon = hilbert_basis(c);

    // every lattice point of the cone in a box must be a sum of generators;
    // the box is wide enough to contain sums of two generators
    Int maxc = 3;
    for (const IVec& h : mon.hilbert)
      for (const Int& x : h) maxc = std::max(maxc, abs_int(x));
    int B = int(2 * maxc);
    std::vector<IVec> pts;
    IVec x(dim, Int(-B));
    while (true) {
      if (c.contains(x) && !is_zero(x)) pts.push_back(x);
      int i = 0;
      for (; i < dim; ++i) {
        if (x[i] < B) { ++x[i]; break; }
        x[i] = -B;
      }
      if (i == dim) break;
    }
    for (const IVec& p : pts) {
      CAPTURE(to_string(p));
      REQUIRE(decompose(mon, p).has_value());
    }
    // minimality: no generator is a sum of two nonzero monoid points
    for (const IVec& h : mon.hilbert) {
      bool reducible = false;
      for (const IVec& p : pts) {
        IVec rest = sub(h, p);
        if (!is_zero(rest) && c.contains(rest)) { reducible = true; break; }
      }
      CAPTURE(to_string(h));
      CHECK_FALSE(reducible);
    }
  }
}

TEST_CASE("decompose reassembles exactly") {
  std::mt19937_64 rng(31337);
  RationalCone sigma =
      cone_from_generators(3, Side::N, {v3(0, 0, 1), v3(1, 0, 1), v3(0, 1, 1), v3(1, 1, 1)});
  AffineMonoid mon = hilbert_basis(dual_cone(sigma));
  for (int trial = 0; trial < 40; ++trial) {
    IVec target(3, Int(0));
    for (const IVec& h : mon.hilbert)
      target = add(target, scale(h, Int(rng() % 3)));
    auto e = decompose(mon, target);
    REQUIRE(e.has_value());
    IVec back(3, Int(0));
    for (size_t i = 0; i < e->size(); ++i) back = add(back, scale(mon.hilbert[i], (*e)[i]));
    CHECK(back == target);
  }
  CHECK_FALSE(decompose(mon, v3(0, 0, -1)).has_value());
}

TEST_CASE("minimal fiber against brute force") {
  RationalCone sigma = cone_from_generators(2, Side::N, {v2(0, 1), v2(3, 1)});
  AffineMonoid mon = hilbert_basis(dual_cone(sigma));
  // brute force all exponent vectors of bounded degree
  IVec target = v2(0, 1);
  int n = int(mon.hilbert.size());
  std::vector<std::vector<Int>> sols;
  std::vector<Int> e(n, Int(0));
  std::function<void(int, int)> rec = [&](int i, int budget) {
    if (i == n) {
      IVec s(2, Int(0));
      for (int j = 0; j < n; ++j) s = add(s, scale(mon.hilbert[j], e[j]));
      if (s == target) sols.push_back(e);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      e[i] = v;
      rec(i + 1, budget - v);
    }
    e[i] = 0;
  };
  rec(0, 6);
  std::vector<std::vector<Int>> minimal;
  for (const auto& a : sols) {
    bool dom = false;
    for (const auto& b : sols) {
      if (a == b) continue;
      bool leq = true;
      for (int j = 0; j < n; ++j)
        if (b[j] > a[j]) leq = false;
      if (leq) { dom = true; break; }
    }
    if (!dom) minimal.push_back(a);
  }
  std::sort(minimal.begin(), minimal.end());
  auto lib = minimal_fiber(mon, target);
  CHECK(lib == minimal);
}

#include "logfan/chart.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"

using namespace logfan;

namespace {

RationalCone interval_cone(const Int& m) {
  return cone_from_generators(2, Side::N, {{m, 1}, {m + 1, 1}});
}

RationalCone square_cone() {
  return cone_from_generators(3, Side::N, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
}

IVec image_of(const ChartPresentation& c, const std::vector<Int>& e) {
  IVec img(c.monoid.ambient(), Int(0));
  for (size_t i = 0; i < e.size(); ++i) img = add(img, scale(c.monoid.hilbert[i], e[i]));
  return img;
}

int find_root(std::vector<int>& p, int i) {
  while (p[i] != i) i = p[i] = p[p[i]];
  return i;
}

// every pair of monomials with equal image and total degree <= bound must be
// connected by relation moves staying inside the degree bound
bool fibers_connected(const ChartPresentation& c, int bound) {
  int n = int(c.monoid.hilbert.size());
  std::map<IVec, std::vector<std::vector<Int>>> fibers;
  std::vector<Int> e(n, Int(0));
  auto rec = [&](auto&& self, int i, int budget) -> void {
    if (i == n) {
      fibers[image_of(c, e)].push_back(e);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      e[i] = v;
      self(self, i + 1, budget - v);
    }
    e[i] = 0;
  };
  rec(rec, 0, bound);

  for (auto& [img, members] : fibers) {
    if (members.size() < 2) continue;
    std::map<std::vector<Int>, int> pos;
    for (int i = 0; i < int(members.size()); ++i) pos[members[i]] = i;
    std::vector<int> parent(members.size());
    for (int i = 0; i < int(parent.size()); ++i) parent[i] = i;
    for (int i = 0; i < int(members.size()); ++i) {
      for (const BinomialRelation& r : c.relations) {
        for (bool fwd : {true, false}) {
          const auto& from = fwd ? r.lhs : r.rhs;
          const auto& to = fwd ? r.rhs : r.lhs;
          bool ok = true;
          std::vector<Int> moved(members[i]);
          for (int k = 0; k < n && ok; ++k) {
            moved[k] = moved[k] - from[k] + to[k];
            if (moved[k] < 0) ok = false;
          }
          if (!ok) continue;
          auto it = pos.find(moved);
          if (it != pos.end()) parent[find_root(parent, i)] = find_root(parent, it->second);
        }
      }
    }
    int root = find_root(parent, 0);
    for (int i = 1; i < int(members.size()); ++i)
      if (find_root(parent, i) != root) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("interval chart has two variables meeting in the uniformizer") {
  for (Int m : {Int(0), Int(1), Int(4), Int(-2)}) {
    ChartPresentation c = chart_presentation(interval_cone(m));
    REQUIRE(c.variables == std::vector<std::string>{"x0", "x1"});
    CHECK(c.smooth_cone);
    CHECK(c.relations.empty());
    REQUIRE(c.uniformizer == std::vector<std::vector<Int>>{{1, 1}});
    CHECK(render_relations(c, "pi") == std::vector<std::string>{"x0*x1 = pi"});
  }
}

TEST_CASE("square chart: one binomial relation, uniformizer splits two ways") {
  ChartPresentation c = chart_presentation(square_cone());
  REQUIRE(c.monoid.hilbert.size() == 4);
  CHECK_FALSE(c.smooth_cone);

  REQUIRE(c.relations.size() == 1);
  const BinomialRelation& r = c.relations[0];
  CHECK(image_of(c, r.lhs) == image_of(c, r.rhs));
  CHECK(r.lhs == std::vector<Int>{1, 0, 0, 1});
  CHECK(r.rhs == std::vector<Int>{0, 1, 1, 0});

  // two disjoint degree-two monomials covering all four variables
  REQUIRE(c.uniformizer.size() == 2);
  std::set<int> support;
  for (const auto& e : c.uniformizer) {
    Int deg = 0;
    int vars = 0;
    for (int i = 0; i < 4; ++i) {
      deg += e[i];
      if (e[i] != 0) {
        ++vars;
        CHECK(!support.count(i));
        support.insert(i);
      }
    }
    CHECK(deg == 2);
    CHECK(vars == 2);
  }
  CHECK(support.size() == 4);

  auto lines = render_relations(c, "pi");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "x0*x3 = x1*x2");
}

TEST_CASE("vertex chart gets a unit pair with the inverse relation") {
  for (Int m : {Int(0), Int(2)}) {
    RationalCone ray = cone_from_generators(2, Side::N, {{m, 1}});
    ChartPresentation c = chart_presentation(ray);
    REQUIRE(c.monoid.hilbert.size() == 3);
    REQUIRE(c.monoid.unit_basis.size() == 1);

    REQUIRE(c.relations.size() == 1);
    CHECK(c.relations[0].lhs == std::vector<Int>{1, 1, 0});
    CHECK(c.relations[0].rhs == std::vector<Int>{0, 0, 0});
    REQUIRE(c.uniformizer == std::vector<std::vector<Int>>{{0, 0, 1}});

    auto lines = render_relations(c, "pi");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "x0*x1 = 1");
    CHECK(lines[1] == "x2 = pi");

    // on the full cone nothing is inverted; on the apex everything is
    CHECK(inverted_on_face(c, ray) == std::vector<int>{0, 1});
    RationalCone apex = cone_from_generators(2, Side::N, {});
    CHECK(inverted_on_face(c, apex) == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("relations are syzygies with disjoint supports") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> entry(-3, 3);
  int built = 0;
  while (built < 12) {
    IVec a{Int(entry(rng)), Int(entry(rng))};
    IVec b{Int(entry(rng)), Int(entry(rng))};
    if (is_zero(a) || is_zero(b)) continue;
    RationalCone sig = cone_from_generators(2, Side::N, {a, b});
    ChartPresentation c;
    try {
      c = chart_presentation(sig, 5);
    } catch (const HeightError&) {
      continue;  // height covector not on this cone's dual
    }
    ++built;
    for (const BinomialRelation& r : c.relations) {
      CHECK(image_of(c, r.lhs) == image_of(c, r.rhs));
      bool disjoint = true;
      for (size_t i = 0; i < r.lhs.size(); ++i)
        if (r.lhs[i] != 0 && r.rhs[i] != 0) disjoint = false;
      CHECK(disjoint);
      CHECK(r.lhs != r.rhs);
    }
    for (const auto& e : c.uniformizer) {
      IVec img = image_of(c, e);
      IVec height(2, Int(0));
      height[1] = 1;
      CHECK(img == height);
    }
    CHECK(fibers_connected(c, 5));
  }
}

TEST_CASE("square chart fibers stay connected at higher degree") {
  ChartPresentation c = chart_presentation(square_cone(), 6);
  CHECK(fibers_connected(c, 6));
}

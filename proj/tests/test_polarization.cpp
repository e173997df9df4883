#include "logfan/polarization.hpp"

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

IntMat mat1(Int a) {
  IntMat m(1, 1);
  m.at(0, 0) = a;
  return m;
}

AffineAction trivial_action(int rank, IntMat translation) {
  AffineAction act;
  act.slice_rank = rank;
  act.translation = std::move(translation);
  act.gamma_slice = {IntMat::identity(rank)};
  return act;
}

ConeDecomposition square_dec() {
  auto pc = delaunay_complex(make_form(IntMat::identity(2)));
  return decomposition_from_complex(pc, trivial_action(2, IntMat::identity(2)));
}

}  // namespace

TEST_CASE("interpolation of the unit form on the square complex") {
  auto dec = square_dec();
  auto pol = polarization_from_form(make_form(IntMat::identity(2)), dec);
  int square = dec.cells.top[0];
  REQUIRE(pol.forms.size() == dec.cells.shapes.size());
  CHECK(pol.forms[square].grad == QVec{Rat(1), Rat(1)});
  CHECK(pol.forms[square].c == Rat(0));
  CHECK(pol.k == Int(1));

  auto rep = check_polarization(pol, dec);
  INFO(rep.failure);
  CHECK(rep.ok);
  REQUIRE(rep.notes.size() == 1);
  CHECK(rep.notes[0] == "k = 1");
}

TEST_CASE("pieces twist correctly under translation") {
  auto dec = square_dec();
  auto pol = polarization_from_form(make_form(IntMat::identity(2)), dec);
  int square = dec.cells.top[0];

  AffineForm g = form_on_cell(pol, dec, PlacedCell{square, IVec{1, 0}});
  CHECK(g.grad == QVec{Rat(3), Rat(1)});
  CHECK(g.c == Rat(-2));

  // exact values: the function agrees with the form at lattice points and
  // interpolates in between
  CHECK(evaluate(pol, dec, QVec{Rat(2), Rat(3)}) == Rat(13));
  CHECK(evaluate(pol, dec, QVec{Rat(1, 2), Rat(1, 2)}) == Rat(1));
  CHECK(evaluate(pol, dec, QVec{Rat(3, 2), Rat(0)}) == Rat(5, 2));
}

TEST_CASE("denominator two forms force k = 2") {
  SUBCASE("one variable") {
    auto q = make_form(mat1(1), 2);  // x^2 / 2
    auto pc = delaunay_complex(q);
    auto dec = decomposition_from_complex(pc, trivial_action(1, mat1(1)));
    auto pol = polarization_from_form(q, dec);
    CHECK(pol.k == Int(2));
    int seg = dec.cells.top[0];
    CHECK(pol.forms[seg].grad == QVec{Rat(1, 2)});

    // the piece left of the origin has the opposite slope
    AffineForm left = form_on_cell(pol, dec, PlacedCell{seg, IVec{-1}});
    CHECK(left.grad == QVec{Rat(-1, 2)});

    auto rep = check_polarization(pol, dec);
    INFO(rep.failure);
    CHECK(rep.ok);
    CHECK(rep.notes[0] == "k = 2");
  }

  SUBCASE("two variables") {
    auto q = make_form(IntMat::identity(2), 2);
    auto dec = decomposition_from_complex(delaunay_complex(q),
                                          trivial_action(2, IntMat::identity(2)));
    auto pol = polarization_from_form(q, dec);
    CHECK(pol.k == Int(2));
    auto rep = check_polarization(pol, dec);
    INFO(rep.failure);
    CHECK(rep.ok);
    CHECK(evaluate(pol, dec, QVec{Rat(2), Rat(3)}) == Rat(13, 2));
  }
}

TEST_CASE("hexagonal form checks out") {
  auto q = make_form(mat2(2, 1, 1, 2));
  auto dec =
      decomposition_from_complex(delaunay_complex(q), trivial_action(2, IntMat::identity(2)));
  auto pol = polarization_from_form(q, dec);
  auto rep = check_polarization(pol, dec);
  INFO(rep.failure);
  CHECK(rep.ok);
  CHECK(pol.k == Int(1));
}

TEST_CASE("a perturbed piece is rejected") {
  SUBCASE("one shape among several: continuity breaks on a wall") {
    auto q = make_form(mat2(2, 1, 1, 2));
    auto dec = decomposition_from_complex(delaunay_complex(q),
                                          trivial_action(2, IntMat::identity(2)));
    auto pol = polarization_from_form(q, dec);
    REQUIRE(dec.cells.top.size() == 2);
    pol.forms[dec.cells.top[0]].c += Rat(1, 3);
    auto rep = check_polarization(pol, dec);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failure.find("disagree") != std::string::npos);
  }

  SUBCASE("single shape: the shift survives continuity but breaks integrality") {
    auto dec = square_dec();
    auto pol = polarization_from_form(make_form(IntMat::identity(2)), dec);
    pol.forms[dec.cells.top[0]].c += Rat(1, 3);
    auto rep = check_polarization(pol, dec);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failure.find("integral") != std::string::npos);
  }

  SUBCASE("understated multiplier breaks integrality") {
    auto q = make_form(IntMat::identity(2), 2);
    auto dec = decomposition_from_complex(delaunay_complex(q),
                                          trivial_action(2, IntMat::identity(2)));
    auto pol = polarization_from_form(q, dec);
    REQUIRE(pol.k == Int(2));
    pol.k = 1;
    auto rep = check_polarization(pol, dec);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failure.find("integral") != std::string::npos);
  }
}

TEST_CASE("pieces interpolated from a different form are rejected") {
  // diag(1,2) also tiles by unit squares, so the decompositions agree, but
  // its pieces are not the pieces of the unit form
  auto dec = square_dec();
  auto wrong = polarization_from_form(make_form(mat2(1, 0, 0, 2)), dec);
  Polarization pol = wrong;
  pol.q = make_form(IntMat::identity(2));
  auto rep = check_polarization(pol, dec);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failure.find("disagree") != std::string::npos);
}

TEST_CASE("group invariance holds for symmetric forms and fails otherwise") {
  GroupAction g;
  g.rank = 2;
  g.generators = {{"r", mat2(0, -1, 1, 0)}};
  AffineAction act;
  act.slice_rank = 2;
  act.translation = IntMat::identity(2);
  act.gamma_slice = group_closure(g);

  SUBCASE("the quarter turn preserves the unit form") {
    auto q = make_form(IntMat::identity(2));
    auto dec = decomposition_from_complex(delaunay_complex(q), act);
    auto pol = polarization_from_form(q, dec);
    auto rep = check_polarization(pol, dec);
    INFO(rep.failure);
    CHECK(rep.ok);
  }

  SUBCASE("the quarter turn does not preserve diag(1,2)") {
    auto q = make_form(mat2(1, 0, 0, 2));
    auto dec = decomposition_from_complex(delaunay_complex(q), act);
    CHECK(check_stability(dec).ok);  // the square tiling itself is stable
    auto pol = polarization_from_form(q, dec);
    auto rep = check_polarization(pol, dec);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failure.find("preserve") != std::string::npos);
  }
}

TEST_CASE("twisted periodicity is part of the interpolation") {
  // sanity for the identity h(x + t) = h(x) + 2<x,t> + q(t) at a point
  auto dec = square_dec();
  auto pol = polarization_from_form(make_form(IntMat::identity(2)), dec);
  QVec xi{Rat(1, 4), Rat(3, 4)};
  QVec shifted{Rat(5, 4), Rat(3, 4)};
  Rat twist = 2 * pol.q.inner(xi, QVec{Rat(1), Rat(0)}) + Rat(1);
  CHECK(evaluate(pol, dec, shifted) == evaluate(pol, dec, xi) + twist);
}

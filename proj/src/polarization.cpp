#include "logfan/polarization.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace logfan {

namespace {

QVec scaled_vertex(const CellShape& s, size_t i) {
  QVec v(s.verts[i].size());
  for (size_t k = 0; k < v.size(); ++k) v[k] = Rat(s.verts[i][k], s.den);
  return v;
}

QVec barycenter(const CellShape& s, const IVec& anchor) {
  int r = int(anchor.size());
  QVec b(r, Rat(0));
  for (const auto& v : s.verts)
    for (int k = 0; k < r; ++k) b[k] += Rat(v[k], s.den * Int(s.verts.size()));
  for (int k = 0; k < r; ++k) b[k] += Rat(anchor[k]);
  return b;
}

Int lcm_denominator(const Rat& x, const Int& acc) { return lcm_int(acc, rat_den(x)); }

CheckReport fail(std::string why) {
  CheckReport rep;
  rep.ok = false;
  rep.failure = std::move(why);
  return rep;
}

}  // namespace

Polarization polarization_from_form(const QuadraticForm& q, const ConeDecomposition& dec) {
  if (!dec.periodic)
    throw std::invalid_argument("a polarization needs a periodic decomposition");
  Polarization pol;
  pol.q = q;
  pol.forms.resize(dec.cells.shapes.size());
  const int r = dec.rank;

  Int k = 1;
  for (int sid : dec.cells.top) {
    const CellShape& s = dec.cells.shapes[sid];
    std::vector<IVec> rows;
    QVec rhs;
    for (size_t i = 0; i < s.verts.size(); ++i) {
      IVec row(s.verts[i]);
      row.push_back(s.den);
      rows.push_back(row);
      rhs.push_back(q.eval(scaled_vertex(s, i)) * Rat(s.den));
    }
    auto sol = solve_rational(IntMat::from_rows(rows), rhs);
    if (!sol) throw std::logic_error("cell is not inscribed for the form");
    AffineForm f;
    for (int i = 0; i < r; ++i) f.grad.push_back((*sol)[i]);
    f.c = (*sol)[r];
    // residual check: interpolation must hit every vertex
    for (size_t i = 0; i < s.verts.size(); ++i)
      if (f.eval(scaled_vertex(s, i)) != q.eval(scaled_vertex(s, i)))
        throw std::logic_error("cell is not inscribed for the form");
    for (const auto& g : f.grad) k = lcm_denominator(g, k);
    k = lcm_denominator(f.c, k);
    pol.forms[sid] = f;
  }
  // twist covectors 2 <., t_j>_Q for the translation generators
  for (int j = 0; j < dec.action.translation.cols(); ++j) {
    QVec t = to_rat(dec.action.translation.col(j));
    for (int i = 0; i < r; ++i) {
      QVec e(r, Rat(0));
      e[i] = 1;
      k = lcm_denominator(2 * pol.q.inner(e, t), k);
    }
    k = lcm_denominator(pol.q.eval(t), k);
  }
  pol.k = k;
  return pol;
}

AffineForm form_on_cell(const Polarization& pol, const ConeDecomposition& dec,
                        const PlacedCell& c) {
  const AffineForm& base = pol.forms.at(c.shape);
  if (base.grad.empty()) throw std::invalid_argument("no form attached to this shape");
  QVec a = to_rat(c.anchor);
  AffineForm out;
  out.grad = base.grad;
  // g(x) = f(x - a) + 2<x - a, a>_Q + q(a)
  for (size_t i = 0; i < a.size(); ++i) {
    QVec e(a.size(), Rat(0));
    e[i] = 1;
    out.grad[i] += 2 * pol.q.inner(e, a);
  }
  out.c = base.c - dot(a, base.grad) - pol.q.eval(a);
  return out;
}

namespace {

std::optional<PlacedCell> locate(const ConeDecomposition& dec, const QVec& xi) {
  const int r = dec.rank;
  for (int sid : dec.cells.top) {
    const CellShape& s = dec.cells.shapes[sid];
    QVec lo(r), hi(r);
    for (int k = 0; k < r; ++k) {
      lo[k] = Rat(s.verts[0][k], s.den);
      hi[k] = lo[k];
      for (const auto& v : s.verts) {
        Rat c(v[k], s.den);
        lo[k] = std::min(lo[k], c);
        hi[k] = std::max(hi[k], c);
      }
    }
    RationalCone over = cone_over_shape(s);
    IVec a(r);
    std::optional<PlacedCell> found;
    auto rec = [&](auto&& self, int k) -> void {
      if (found) return;
      if (k == r) {
        QVec q(r + 1);
        for (int i = 0; i < r; ++i) q[i] = xi[i] - Rat(a[i]);
        q[r] = Rat(1);
        if (over.contains(q)) found = PlacedCell{sid, a};
        return;
      }
      for (Int v = ceil_rat(xi[k] - hi[k]); v <= floor_rat(xi[k] - lo[k]); ++v) {
        a[k] = v;
        self(self, k + 1);
      }
    };
    rec(rec, 0);
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

Rat evaluate(const Polarization& pol, const ConeDecomposition& dec, const QVec& xi) {
  auto cell = locate(dec, xi);
  if (!cell) throw std::logic_error("point is not covered by the decomposition");
  return form_on_cell(pol, dec, *cell).eval(xi);
}

CheckReport check_polarization(const Polarization& pol, const ConeDecomposition& dec,
                               const CheckOptions& opt) {
  if (!dec.periodic) return fail("a polarization needs a periodic decomposition");
  const int r = dec.rank;
  const auto& shapes = dec.cells.shapes;

  // wall orbit representatives
  std::vector<CellOrbit> orbits;
  try {
    orbits = orbit_decomposition(dec, opt.max_orbits);
  } catch (const std::runtime_error& e) {
    return fail(e.what());
  }

  // clause 1: continuity. Forms of the two cells on each wall agree there.
  // clause 3: strict convexity. Each coface's form wins on the other coface.
  for (const auto& o : orbits) {
    if (o.dim != r - 1) continue;
    auto cof = cofaces(dec, o.rep);
    if (cof.size() != 2)
      return fail("wall of shape " + std::to_string(o.rep.shape) + " at " +
                  to_string(o.rep.anchor) + " has " + std::to_string(cof.size()) +
                  " cofaces");
    AffineForm f0 = form_on_cell(pol, dec, cof[0]);
    AffineForm f1 = form_on_cell(pol, dec, cof[1]);
    const CellShape& ws = shapes[o.rep.shape];
    for (size_t i = 0; i < ws.verts.size(); ++i) {
      QVec v = scaled_vertex(ws, i);
      for (int k = 0; k < r; ++k) v[k] += Rat(o.rep.anchor[k]);
      if (f0.eval(v) != f1.eval(v))
        return fail("pieces disagree on the wall of shape " +
                    std::to_string(o.rep.shape) + " at " + to_string(o.rep.anchor));
    }
    QVec b0 = barycenter(shapes[cof[0].shape], cof[0].anchor);
    QVec b1 = barycenter(shapes[cof[1].shape], cof[1].anchor);
    if (!(f0.eval(b1) < f1.eval(b1)) || !(f1.eval(b0) < f0.eval(b0)))
      return fail("no strict break across the wall of shape " +
                  std::to_string(o.rep.shape) + " at " + to_string(o.rep.anchor));
  }

  // clause 2: k-integrality of every piece and twist
  for (int sid : dec.cells.top) {
    const AffineForm& f = pol.forms[sid];
    for (const auto& g : f.grad)
      if (rat_den(Rat(pol.k) * g) != 1)
        return fail("piece of shape " + std::to_string(sid) + " is not 1/k integral");
    if (rat_den(Rat(pol.k) * f.c) != 1)
      return fail("piece of shape " + std::to_string(sid) + " is not 1/k integral");
  }

  // sample points: barycenters of top cells and a rational grid
  std::vector<QVec> samples;
  for (int sid : dec.cells.top) samples.push_back(barycenter(shapes[sid], IVec(r, Int(0))));
  {
    QVec p(r);
    auto grid = [&](auto&& self, int k) -> void {
      if (k == r) {
        samples.push_back(p);
        return;
      }
      for (int i = 0; i < opt.coverage_grid; ++i) {
        p[k] = Rat(2 * i + 1, 2 * opt.coverage_grid);
        self(self, k + 1);
      }
    };
    grid(grid, 0);
  }

  // clause 4: twisted periodicity along the translation generators
  for (int j = 0; j < dec.action.translation.cols(); ++j) {
    QVec t = to_rat(dec.action.translation.col(j));
    for (const auto& xi : samples) {
      QVec shifted(xi);
      for (int k2 = 0; k2 < r; ++k2) shifted[k2] += t[k2];
      Rat lhs = evaluate(pol, dec, shifted);
      Rat rhs = evaluate(pol, dec, xi) + 2 * pol.q.inner(xi, t) + pol.q.eval(t);
      if (lhs != rhs)
        return fail("translation twist fails at " + to_string(xi) +
                    " along generator " + std::to_string(j));
    }
  }

  // clause 5: invariance under the group part
  for (size_t gi = 1; gi < dec.action.gamma_slice.size(); ++gi) {
    const IntMat& g = dec.action.gamma_slice[gi];
    for (const auto& xi : samples) {
      QVec gxi = g * xi;
      if (evaluate(pol, dec, gxi) != evaluate(pol, dec, xi))
        return fail("group element " + std::to_string(gi) +
                    " does not preserve the function at " + to_string(xi));
    }
  }

  CheckReport rep;
  rep.notes.push_back("k = " + to_string(pol.k));
  return rep;
}

}  // namespace logfan

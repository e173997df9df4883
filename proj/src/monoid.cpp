#include "logfan/monoid.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace logfan {

namespace {

// simplicial subdivision of a pointed cone using only its extreme rays
void triangulate(const RationalCone& c, std::vector<std::vector<IVec>>& out) {
  if (int(c.rays.size()) == c.dim()) {
    out.push_back(c.rays);
    return;
  }
  const IVec& apex = c.rays[0];
  for (const IVec& a : c.ineqs) {
    if (dot(a, apex) == 0) continue;  // facet contains the apex
    std::vector<IVec> fr;
    for (const IVec& r : c.rays)
      if (dot(a, r) == 0) fr.push_back(r);
    RationalCone facet = cone_from_generators(c.ambient, c.side, fr);
    std::vector<std::vector<IVec>> sub;
    triangulate(facet, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

// lattice points in the half-open parallelepiped spanned by the columns of v,
// zero excluded; enumerated through the quotient group of the spanned lattice
std::vector<IVec> parallelepiped_points(const std::vector<IVec>& rays, int dim) {
  int k = int(rays.size());
  std::vector<IVec> sat = saturate_lattice(rays, dim);  // ambient points of the span
  IntMat b(dim, int(sat.size()));
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < dim; ++i) b.at(i, j) = sat[j][i];
  // rays in saturation coordinates
  IntMat c(int(sat.size()), k);
  IntMat vm(dim, k);
  for (int j = 0; j < k; ++j) {
    QVec q = to_rat(rays[j]);
    auto sol = solve_rational(b, q);
    if (!sol) throw std::logic_error("parallelepiped_points: ray outside saturation");
    for (int i = 0; i < c.rows(); ++i) {
      if (!is_integral((*sol)[i])) throw std::logic_error("parallelepiped_points: saturation broke");
      c.at(i, j) = rat_num((*sol)[i]);
    }
    for (int i = 0; i < dim; ++i) vm.at(i, j) = rays[j][i];
  }
  if (c.rows() != k) throw std::logic_error("parallelepiped_points: rays not independent");
  SmithForm s = smith_normal_form(c);
  IntMat uinv = s.u.inverse_unimodular();
  // quotient representatives z, z_i in [0, d_i)
  std::vector<IVec> out;
  IVec z(k, Int(0));
  while (true) {
    // representative in saturation coords, then reduce into the parallelepiped
    IVec xb = uinv * z;
    IVec x = b * xb;
    auto t = solve_rational(vm, to_rat(x));
    if (!t) throw std::logic_error("parallelepiped_points: solve failed");
    IVec shift(k);
    for (int i = 0; i < k; ++i) shift[i] = floor_rat((*t)[i]);
    x = sub(x, vm * shift);
    if (!is_zero(x)) out.push_back(x);
    // odometer over the elementary divisor box
    int i = 0;
    for (; i < k; ++i) {
      ++z[i];
      if (z[i] < s.d.at(i, i)) break;
      z[i] = 0;
    }
    if (i == k) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IVec grade_functional(const RationalCone& image) {
  IVec w(image.ambient, Int(0));
  for (const IVec& a : image.ineqs) w = add(w, a);
  return w;
}

}  // namespace

IVec AffineMonoid::project(const IVec& x) const {
  IVec y = frame * x;
  return IVec(y.begin() + unit_rank, y.end());
}

IVec AffineMonoid::lift(const IVec& q) const {
  IVec y(ambient(), Int(0));
  for (int i = 0; i < int(q.size()); ++i) y[unit_rank + i] = q[i];
  return frame.inverse_unimodular() * y;
}

AffineMonoid hilbert_basis(const RationalCone& cone_in_m) {
  AffineMonoid m;
  m.cone = cone_in_m;
  int d = cone_in_m.ambient;
  m.unit_basis = cone_in_m.lineality;  // already canonical and saturated
  m.unit_rank = int(m.unit_basis.size());

  // unimodular frame whose first unit_rank coordinates cut out the units
  if (m.unit_rank > 0) {
    IntMat ub(d, m.unit_rank);
    for (int j = 0; j < m.unit_rank; ++j)
      for (int i = 0; i < d; ++i) ub.at(i, j) = m.unit_basis[j][i];
    SmithForm s = smith_normal_form(ub);
    for (const Int& di : s.diagonal())
      if (di != 1) throw std::logic_error("hilbert_basis: unit lattice not saturated");
    m.frame = s.u;
  } else {
    m.frame = IntMat::identity(d);
  }

  int qd = d - m.unit_rank;
  std::vector<IVec> qrays;
  for (const IVec& r : cone_in_m.rays) qrays.push_back(m.project(r));
  m.image = cone_from_generators(qd, cone_in_m.side, qrays);
  if (!m.image.pointed()) throw std::logic_error("hilbert_basis: quotient not pointed");

  std::set<IVec> cand;
  for (const IVec& r : m.image.rays) cand.insert(primitive(r));
  std::vector<std::vector<IVec>> simplices;
  if (!m.image.rays.empty()) triangulate(m.image, simplices);
  for (const auto& s : simplices)
    for (IVec& p : parallelepiped_points(s, qd)) cand.insert(std::move(p));

  // keep the irreducibles
  IVec w = grade_functional(m.image);
  std::vector<IVec> cl(cand.begin(), cand.end());
  std::stable_sort(cl.begin(), cl.end(),
                   [&](const IVec& a, const IVec& b) { return dot(w, a) < dot(w, b); });
  for (const IVec& x : cl) {
    bool reducible = false;
    for (const IVec& c : cl) {
      if (c == x) continue;
      if (dot(w, c) > dot(w, x)) break;  // sorted by grade
      if (m.image.contains(sub(x, c))) { reducible = true; break; }
    }
    if (!reducible) m.pointed_image.push_back(x);
  }
  std::sort(m.pointed_image.begin(), m.pointed_image.end());
  for (const IVec& q : m.pointed_image) m.pointed_gens.push_back(m.lift(q));

  for (const IVec& u : m.unit_basis) {
    m.hilbert.push_back(u);
    m.hilbert.push_back(neg(u));
  }
  m.hilbert.insert(m.hilbert.end(), m.pointed_gens.begin(), m.pointed_gens.end());
  return m;
}

namespace {

// all exponent vectors over pointed_image summing to q
void fiber_dfs(const AffineMonoid& m, const IVec& w, const IVec& q, int from,
               std::vector<Int>& cur, std::vector<std::vector<Int>>& out) {
  if (is_zero(q)) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i < int(m.pointed_image.size()); ++i) {
    const IVec& h = m.pointed_image[i];
    if (dot(w, h) > dot(w, q)) continue;
    IVec rest = sub(q, h);
    if (!m.image.contains(rest)) continue;
    ++cur[i];
    fiber_dfs(m, w, rest, i, cur, out);
    --cur[i];
  }
}

// exponents over the full hilbert list given pointed exponents and the
// leftover unit part
std::optional<std::vector<Int>> assemble(const AffineMonoid& m, const IVec& target,
                                         const std::vector<Int>& pointed_exp) {
  IVec used(m.ambient(), Int(0));
  for (int i = 0; i < int(pointed_exp.size()); ++i)
    if (pointed_exp[i] != 0) used = add(used, scale(m.pointed_gens[i], pointed_exp[i]));
  IVec rest = sub(target, used);
  IntMat ub(m.ambient(), m.unit_rank);
  for (int j = 0; j < m.unit_rank; ++j)
    for (int i = 0; i < m.ambient(); ++i) ub.at(i, j) = m.unit_basis[j][i];
  auto coef = solve_integer(ub, rest);
  if (!coef) return std::nullopt;
  std::vector<Int> full(m.hilbert.size(), Int(0));
  for (int j = 0; j < m.unit_rank; ++j) {
    if ((*coef)[j] > 0) full[2 * j] = (*coef)[j];
    if ((*coef)[j] < 0) full[2 * j + 1] = -(*coef)[j];
  }
  for (int i = 0; i < int(pointed_exp.size()); ++i)
    full[2 * m.unit_rank + i] = pointed_exp[i];
  return full;
}

bool leq_componentwise(const std::vector<Int>& a, const std::vector<Int>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace

namespace {

bool first_decomposition(const AffineMonoid& m, const IVec& w, const IVec& q, int from,
                         std::vector<Int>& cur, std::set<std::pair<int, IVec>>& dead) {
  if (is_zero(q)) return true;
  if (dead.count({from, q})) return false;
  for (int i = from; i < int(m.pointed_image.size()); ++i) {
    const IVec& h = m.pointed_image[i];
    if (dot(w, h) > dot(w, q)) continue;
    IVec rest = sub(q, h);
    if (!m.image.contains(rest)) continue;
    ++cur[i];
    if (first_decomposition(m, w, rest, i, cur, dead)) return true;
    --cur[i];
  }
  dead.insert({from, q});
  return false;
}

}  // namespace

std::optional<std::vector<Int>> decompose(const AffineMonoid& m, const IVec& target) {
  if (!m.contains(target)) return std::nullopt;
  IVec q = m.project(target);
  IVec w = grade_functional(m.image);
  std::vector<Int> cur(m.pointed_image.size(), Int(0));
  std::set<std::pair<int, IVec>> dead;
  if (!first_decomposition(m, w, q, 0, cur, dead)) return std::nullopt;
  return assemble(m, target, cur);
}

std::vector<std::vector<Int>> minimal_fiber(const AffineMonoid& m, const IVec& target) {
  if (!m.contains(target)) return {};
  IVec q = m.project(target);
  IVec w = grade_functional(m.image);
  std::vector<Int> cur(m.pointed_image.size(), Int(0));
  std::vector<std::vector<Int>> pointed;
  fiber_dfs(m, w, q, 0, cur, pointed);
  std::vector<std::vector<Int>> full;
  for (const auto& pe : pointed)
    if (auto f = assemble(m, target, pe)) full.push_back(*f);
  // componentwise-minimal only
  std::vector<std::vector<Int>> out;
  for (const auto& a : full) {
    bool dominated = false;
    for (const auto& b : full)
      if (&a != &b && leq_componentwise(b, a) && b != a) { dominated = true; break; }
    if (!dominated) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MonoidHom f_sigma_dual(const RationalCone& sigma_in_n) {
  int d = sigma_in_n.ambient;
  IVec height(d, Int(0));
  height[d - 1] = 1;
  for (const IVec& r : sigma_in_n.rays)
    if (r[d - 1] < 0)
      throw HeightError("height covector is negative on a ray of the cone");
  for (const IVec& l : sigma_in_n.lineality)
    if (l[d - 1] != 0)
      throw HeightError("height covector does not vanish on the lineality space");

  MonoidHom f;
  f.target = hilbert_basis(dual_cone(sigma_in_n));

  // source: the free monoid of the valuation
  RationalCone ray = cone_from_generators(1, Side::M, {IVec{Int(1)}});
  f.source = hilbert_basis(ray);

  // group generated by the target monoid and the height written in it
  std::vector<IVec> basis = column_lattice_basis(
      [&] {
        IntMat hm(d, int(f.target.hilbert.size()));
        for (int j = 0; j < hm.cols(); ++j)
          for (int i = 0; i < d; ++i) hm.at(i, j) = f.target.hilbert[j][i];
        return hm;
      }());
  bool full = int(basis.size()) == d;
  if (full) {
    IntMat bm(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) bm.at(i, j) = basis[j][i];
    full = bm.is_unimodular();
  }
  if (full) {
    f.gp_basis = IntMat::identity(d);
    f.gp_matrix = IntMat(d, 1);
    for (int i = 0; i < d; ++i) f.gp_matrix.at(i, 0) = height[i];
  } else {
    f.gp_basis = IntMat(d, int(basis.size()));
    for (int j = 0; j < int(basis.size()); ++j)
      for (int i = 0; i < d; ++i) f.gp_basis.at(i, j) = basis[j][i];
    auto coords = solve_integer(f.gp_basis, height);
    if (!coords) throw HeightError("height covector is not in the group of the chart monoid");
    f.gp_matrix = IntMat(int(coords->size()), 1);
    for (int i = 0; i < int(coords->size()); ++i) f.gp_matrix.at(i, 0) = (*coords)[i];
  }
  return f;
}

KatoResult kato_log_smooth_check(const MonoidHom& f, bool general, const Int& residue_char) {
  KatoResult r;
  r.general_mode = general;
  r.injective = is_injective(f.gp_matrix);
  r.cokernel = cokernel_invariants(f.gp_matrix);
  if (!r.injective) {
    r.verdict = KatoVerdict::fails_injectivity;
    return r;
  }
  bool torsion_ok;
  if (!general) {
    torsion_ok = r.cokernel.torsion.empty();
  } else {
    torsion_ok = true;
    for (const Int& t : r.cokernel.torsion)
      if (residue_char > 0 && t % residue_char == 0) torsion_ok = false;
  }
  r.verdict = torsion_ok ? KatoVerdict::log_smooth : KatoVerdict::fails_torsion_free;
  return r;
}

}  // namespace logfan

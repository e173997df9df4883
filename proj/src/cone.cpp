#include "logfan/cone.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace logfan {

namespace {

constexpr size_t kRayCap = 200000;

struct DDRay {
  IVec v;
  std::vector<char> tight;
};

// tight(a) subset of tight(b) over inequalities 0..upto-1
bool tight_subset(const std::vector<char>& a, const std::vector<char>& b, int upto) {
  for (int i = 0; i < upto; ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

IVec reduce_mod_lattice(const IVec& x, const std::vector<IVec>& basis) {
  if (basis.empty()) return x;
  int d = int(x.size());
  IntMat b(d, int(basis.size()));
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < d; ++i) b.at(i, j) = basis[j][i];
  SmithForm s = smith_normal_form(b);
  // in the frame y = u x the lattice is spanned by d_i e_i
  IVec y = s.u * x;
  int k = std::min(b.rows(), b.cols());
  for (int i = 0; i < k; ++i) {
    Int di = s.d.at(i, i);
    if (di == 0) continue;
    y[i] -= di * floor_div(y[i], di);
  }
  return s.u.inverse_unimodular() * y;
}

DDPair double_description(int dim, const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs) {
  for (const IVec& a : ineqs)
    if (int(a.size()) != dim) throw std::invalid_argument("double_description: bad inequality");
  for (const IVec& e : eqs)
    if (int(e.size()) != dim) throw std::invalid_argument("double_description: bad equation");

  // restrict to the solution subspace of the equations
  IntMat em(int(eqs.size()), dim);
  for (int i = 0; i < em.rows(); ++i)
    for (int j = 0; j < dim; ++j) em.at(i, j) = eqs[i][j];
  std::vector<IVec> kb = integer_kernel_basis(em);
  int k = int(kb.size());

  int m = int(ineqs.size());
  std::vector<IVec> ia(m, IVec(k, Int(0)));  // inequalities in subspace coordinates
  for (int q = 0; q < m; ++q)
    for (int j = 0; j < k; ++j) ia[q][j] = dot(ineqs[q], kb[j]);

  std::vector<IVec> lin;
  for (int j = 0; j < k; ++j) {
    IVec e(k, Int(0));
    e[j] = 1;
    lin.push_back(e);
  }
  std::vector<DDRay> rays;

  for (int q = 0; q < m; ++q) {
    const IVec& a = ia[q];
    if (is_zero(a)) {
      for (DDRay& r : rays) r.tight.resize(q + 1, 0), r.tight[q] = 1;
      continue;
    }
    for (DDRay& r : rays) r.tight.resize(q + 1, 0);

    int l0i = -1;
    for (int i = 0; i < int(lin.size()); ++i)
      if (dot(a, lin[i]) != 0) { l0i = i; break; }

    if (l0i >= 0) {
      IVec l0 = lin[l0i];
      Int v0 = dot(a, l0);
      if (v0 < 0) { l0 = neg(l0); v0 = -v0; }
      std::vector<IVec> nl;
      for (int i = 0; i < int(lin.size()); ++i) {
        if (i == l0i) continue;
        Int vi = dot(a, lin[i]);
        nl.push_back(primitive(sub(scale(lin[i], v0), scale(l0, vi))));
      }
      for (DDRay& r : rays) {
        Int vr = dot(a, r.v);
        r.v = primitive(sub(scale(r.v, v0), scale(l0, vr)));
        r.tight[q] = 1;
      }
      DDRay fresh{l0, std::vector<char>(q + 1, 1)};
      fresh.tight[q] = 0;
      rays.push_back(std::move(fresh));
      lin = std::move(nl);
      continue;
    }

    std::vector<Int> val(rays.size());
    std::vector<int> pos, zer, neg;
    for (int i = 0; i < int(rays.size()); ++i) {
      val[i] = dot(a, rays[i].v);
      (val[i] > 0 ? pos : val[i] == 0 ? zer : neg).push_back(i);
    }
    if (neg.empty()) {
      for (int i : zer) rays[i].tight[q] = 1;
      continue;
    }

    std::vector<DDRay> next;
    for (int i : pos) next.push_back(rays[i]);
    for (int i : zer) {
      next.push_back(rays[i]);
      next.back().tight[q] = 1;
    }
    for (int p : pos)
      for (int n : neg) {
        std::vector<char> common(q, 0);
        for (int t = 0; t < q; ++t) common[t] = rays[p].tight[t] && rays[n].tight[t];
        bool adjacent = true;
        for (int s = 0; s < int(rays.size()) && adjacent; ++s) {
          if (s == p || s == n) continue;
          if (tight_subset(common, rays[s].tight, q)) adjacent = false;
        }
        if (!adjacent) continue;
        DDRay w;
        w.v = primitive(sub(scale(rays[n].v, val[p]), scale(rays[p].v, val[n])));
        common.push_back(1);  // tight at q
        w.tight = std::move(common);
        next.push_back(std::move(w));
        if (next.size() > kRayCap)
          throw std::runtime_error("double_description: ray explosion, input too large");
      }
    rays = std::move(next);
  }

  // back to ambient coordinates; kb is saturated so primitivity survives
  DDPair out;
  for (const DDRay& r : rays) {
    IVec full(dim, Int(0));
    for (int j = 0; j < k; ++j)
      if (r.v[j] != 0)
        for (int i = 0; i < dim; ++i) full[i] += r.v[j] * kb[j][i];
    out.rays.push_back(full);
  }
  // canonical lineality: common kernel of all constraints
  std::vector<IVec> stacked = ineqs;
  stacked.insert(stacked.end(), eqs.begin(), eqs.end());
  IntMat sm(int(stacked.size()), dim);
  for (int i = 0; i < sm.rows(); ++i)
    for (int j = 0; j < dim; ++j) sm.at(i, j) = stacked[i][j];
  out.lineality = hnf_basis(integer_kernel_basis(sm), dim);

  for (IVec& r : out.rays) r = primitive(reduce_mod_lattice(r, out.lineality));
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

bool RationalCone::contains(const IVec& x) const {
  for (const IVec& a : ineqs)
    if (dot(a, x) < 0) return false;
  for (const IVec& e : eqs)
    if (dot(e, x) != 0) return false;
  return true;
}

bool RationalCone::contains(const QVec& x) const {
  for (const IVec& a : ineqs)
    if (dot(a, x) < 0) return false;
  for (const IVec& e : eqs)
    if (dot(e, x) != 0) return false;
  return true;
}

bool RationalCone::contains_in_interior(const QVec& x) const {
  for (const IVec& a : ineqs)
    if (dot(a, x) <= 0) return false;
  for (const IVec& e : eqs)
    if (dot(e, x) != 0) return false;
  return true;
}

bool RationalCone::contains_cone(const RationalCone& c) const {
  for (const IVec& r : c.rays)
    if (!contains(r)) return false;
  for (const IVec& l : c.lineality)
    if (!contains(l) || !contains(neg(l))) return false;
  return true;
}

std::vector<IVec> RationalCone::generator_list() const {
  std::vector<IVec> out = rays;
  for (const IVec& l : lineality) {
    out.push_back(l);
    out.push_back(neg(l));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RationalCone cone_from_generators(int ambient, Side side, std::vector<IVec> gens,
                                  std::vector<IVec> lineality_gens) {
  for (const IVec& g : gens)
    if (int(g.size()) != ambient) throw std::invalid_argument("cone_from_generators: bad generator");
  RationalCone c;
  c.ambient = ambient;
  c.side = side;
  DDPair h = double_description(ambient, gens, lineality_gens);  // V-rep of the dual
  c.ineqs = h.rays;
  c.eqs = h.lineality;
  DDPair v = double_description(ambient, c.ineqs, c.eqs);
  c.rays = v.rays;
  c.lineality = v.lineality;
  for (const IVec& g : gens)
    if (!c.contains(g)) throw std::logic_error("cone_from_generators: generator escaped");
  return c;
}

RationalCone cone_from_inequalities(int ambient, Side side, const std::vector<IVec>& ineqs,
                                    const std::vector<IVec>& eqs) {
  RationalCone c;
  c.ambient = ambient;
  c.side = side;
  DDPair v = double_description(ambient, ineqs, eqs);
  c.rays = v.rays;
  c.lineality = v.lineality;
  DDPair h = double_description(ambient, c.rays, c.lineality);
  c.ineqs = h.rays;
  c.eqs = h.lineality;
  return c;
}

RationalCone dual_cone(const RationalCone& c) {
  RationalCone d;
  d.ambient = c.ambient;
  d.side = c.side == Side::N ? Side::M : Side::N;
  DDPair v = double_description(c.ambient, c.rays, c.lineality);
  d.rays = v.rays;
  d.lineality = v.lineality;
  // facets of the dual are the extreme rays of the primal; recompute for
  // canonical form rather than trusting the input
  DDPair h = double_description(c.ambient, d.rays, d.lineality);
  d.ineqs = h.rays;
  d.eqs = h.lineality;
  return d;
}

std::vector<RationalCone> faces(const RationalCone& c) {
  std::set<std::vector<int>> seen;
  std::queue<std::vector<int>> work;
  std::vector<int> all(c.rays.size());
  for (int i = 0; i < int(all.size()); ++i) all[i] = i;
  seen.insert(all);
  work.push(all);
  std::vector<RationalCone> out;
  while (!work.empty()) {
    std::vector<int> s = work.front();
    work.pop();
    std::vector<IVec> gens;
    for (int i : s) gens.push_back(c.rays[i]);
    out.push_back(cone_from_generators(c.ambient, c.side, gens, c.lineality));
    for (const IVec& a : c.ineqs) {
      std::vector<int> t;
      for (int i : s)
        if (dot(a, c.rays[i]) == 0) t.push_back(i);
      if (t.size() != s.size() && seen.insert(t).second) work.push(t);
    }
  }
  std::sort(out.begin(), out.end(), [](const RationalCone& a, const RationalCone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a < b;
  });
  return out;
}

bool is_smooth_cone(const RationalCone& c) {
  std::vector<IVec> gens = c.rays;
  gens.insert(gens.end(), c.lineality.begin(), c.lineality.end());
  if (int(gens.size()) != c.dim()) return false;
  if (gens.empty()) return true;
  IntMat g(c.ambient, int(gens.size()));
  for (int j = 0; j < g.cols(); ++j)
    for (int i = 0; i < c.ambient; ++i) g.at(i, j) = gens[j][i];
  for (const Int& d : smith_normal_form(g).diagonal())
    if (d != 1) return false;
  return true;
}

}  // namespace logfan

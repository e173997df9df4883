#include "logfan/delaunay.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace logfan {

bool CellShape::operator<(const CellShape& o) const {
  return std::tie(dim, den, verts) < std::tie(o.dim, o.den, o.verts);
}

std::pair<CellShape, IVec> canonical_cell(const Int& den, std::vector<IVec> verts) {
  if (den <= 0) throw std::invalid_argument("cell denominator must be positive");
  if (verts.empty()) throw std::invalid_argument("cell needs at least one vertex");
  const int r = int(verts[0].size());
  Int g = den;
  for (const auto& v : verts) {
    if (int(v.size()) != r) throw std::invalid_argument("cell vertices of mixed dimension");
    for (const auto& e : v) g = gcd_int(g, e);
  }
  CellShape s;
  s.den = den / g;
  for (auto& v : verts)
    for (auto& e : v) e /= g;

  const IVec& v0 = *std::min_element(verts.begin(), verts.end());
  IVec anchor(r);
  for (int k = 0; k < r; ++k) anchor[k] = floor_div(v0[k], s.den);
  for (auto& v : verts)
    for (int k = 0; k < r; ++k) v[k] -= s.den * anchor[k];
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  std::vector<IVec> diffs;
  for (size_t i = 1; i < verts.size(); ++i) diffs.push_back(sub(verts[i], verts[0]));
  s.dim = diffs.empty() ? 0 : integer_rank(IntMat::from_rows(diffs));
  s.verts = std::move(verts);
  return {s, anchor};
}

std::vector<std::vector<IVec>> delaunay_star(const QuadraticForm& q) {
  const int n = q.n;
  if (n <= 0) throw std::invalid_argument("form must have positive rank");

  // Voronoi-relevant candidates: minima of every nonzero class mod 2
  std::set<IVec> relevant;
  for (long mask = 1; mask < (1L << n); ++mask) {
    IVec res(n, Int(0));
    for (int i = 0; i < n; ++i)
      if (mask & (1L << i)) res[i] = 1;
    for (auto& w : coset_minimum(q, res).vectors) relevant.insert(w);
  }
  std::vector<IVec> ws(relevant.begin(), relevant.end());
  const int m = int(ws.size());

  // facet data of the Voronoi cell of 0: 2 <x, w>_Q <= Q(w)
  std::vector<IVec> cov(m);
  std::vector<Int> rhs(m);
  for (int i = 0; i < m; ++i) {
    IVec aw = q.a * ws[i];
    cov[i] = scale(aw, Int(2));
    rhs[i] = dot(ws[i], aw);
  }

  // vertices of the Voronoi cell: nonsingular n-subsets, then feasibility
  std::set<QVec> vertices;
  std::vector<int> pick(n);
  std::function<void(int, int)> choose = [&](int from, int depth) {
    if (depth == n) {
      std::vector<IVec> rows;
      QVec b;
      for (int i = 0; i < n; ++i) {
        rows.push_back(cov[pick[i]]);
        b.push_back(Rat(rhs[pick[i]]));
      }
      IntMat g = IntMat::from_rows(rows);
      if (g.det() == 0) return;
      auto x = solve_rational(g, b);
      if (!x) return;
      for (int i = 0; i < m; ++i)
        if (dot(cov[i], *x) > Rat(rhs[i])) return;
      vertices.insert(*x);
      return;
    }
    for (int i = from; i <= m - (n - depth); ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  if (vertices.empty()) throw std::logic_error("voronoi cell has no vertices");

  // each vertex is the center of an empty sphere through 0; the lattice
  // points on that sphere are the vertices of one maximal cell of the star
  std::set<std::vector<IVec>> cells;
  for (const auto& c : vertices) {
    Rat rho = q.eval(c);
    auto pts = points_in_ellipsoid(q, c, rho);
    std::vector<IVec> cell;
    bool has_origin = false;
    for (const auto& p : pts) {
      QVec z(n);
      for (int i = 0; i < n; ++i) z[i] = Rat(p[i]) - c[i];
      if (q.eval(z) < rho) throw std::logic_error("sphere around a voronoi vertex is not empty");
      cell.push_back(p);
      if (is_zero(p)) has_origin = true;
    }
    if (!has_origin) throw std::logic_error("cell at a voronoi vertex misses the origin");
    cells.insert(cell);
  }
  return {cells.begin(), cells.end()};
}

PeriodicCellComplex build_periodic_complex(
    int rank, const std::vector<std::pair<Int, std::vector<IVec>>>& max_cells) {
  if (max_cells.empty()) throw std::invalid_argument("periodic complex needs at least one cell");

  std::map<CellShape, int> index;
  std::vector<CellShape> shapes;
  std::vector<int> queue_order;
  auto intern = [&](const CellShape& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = int(shapes.size());
    index.emplace(s, id);
    shapes.push_back(s);
    queue_order.push_back(id);
    return id;
  };

  std::set<int> top_ids;
  for (const auto& [den, verts] : max_cells) {
    auto [shape, anchor] = canonical_cell(den, verts);
    (void)anchor;
    top_ids.insert(intern(shape));
  }

  // close under faces; offsets are recorded inside each shape's own frame
  std::vector<std::vector<PlacedCell>> faces_of(shapes.size());
  for (size_t qi = 0; qi < queue_order.size(); ++qi) {
    int id = queue_order[qi];
    CellShape s = shapes[id];
    RationalCone over = cone_over_shape(s);
    std::vector<PlacedCell> fl;
    for (const auto& f : faces(over)) {
      if (f.rays.empty()) continue;        // apex
      if (f.dim() == over.dim()) continue; // the cell itself
      Int fden = 1;
      for (const auto& r : f.rays) fden = lcm_int(fden, r[rank]);
      std::vector<IVec> fverts;
      for (const auto& r : f.rays) {
        Int h = r[rank];
        IVec v(rank);
        for (int k = 0; k < rank; ++k) v[k] = r[k] * (fden / h);
        fverts.push_back(v);
      }
      auto [fs, off] = canonical_cell(fden, fverts);
      int fid = intern(fs);
      if (faces_of.size() < shapes.size()) faces_of.resize(shapes.size());
      fl.push_back(PlacedCell{fid, off});
    }
    std::sort(fl.begin(), fl.end());
    if (faces_of.size() < shapes.size()) faces_of.resize(shapes.size());
    faces_of[id] = std::move(fl);
  }

  // renumber into (dim, den, verts) order
  std::vector<int> order(shapes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return shapes[a] < shapes[b]; });
  std::vector<int> rank_of(shapes.size());
  for (size_t i = 0; i < order.size(); ++i) rank_of[order[i]] = int(i);

  PeriodicCellComplex out;
  out.rank = rank;
  out.shapes.resize(shapes.size());
  out.faces.resize(shapes.size());
  for (size_t i = 0; i < shapes.size(); ++i) {
    out.shapes[rank_of[i]] = shapes[i];
    auto fl = faces_of[i];
    for (auto& pc : fl) pc.shape = rank_of[pc.shape];
    std::sort(fl.begin(), fl.end());
    out.faces[rank_of[i]] = std::move(fl);
  }
  for (int t : top_ids) out.top.push_back(rank_of[t]);
  std::sort(out.top.begin(), out.top.end());
  return out;
}

PeriodicCellComplex delaunay_complex(const QuadraticForm& q) {
  std::vector<std::pair<Int, std::vector<IVec>>> cells;
  for (auto& c : delaunay_star(q)) cells.emplace_back(Int(1), c);
  return build_periodic_complex(q.n, cells);
}

RationalCone cone_over_shape(const CellShape& s, Side side) {
  const int r = s.verts.empty() ? 0 : int(s.verts[0].size());
  std::vector<IVec> gens;
  for (const auto& v : s.verts) {
    IVec g(r + 1);
    for (int k = 0; k < r; ++k) g[k] = v[k];
    g[r] = s.den;
    gens.push_back(primitive(g));
  }
  return cone_from_generators(r + 1, side, gens);
}

}  // namespace logfan

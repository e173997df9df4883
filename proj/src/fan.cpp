#include "logfan/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace logfan {

namespace {

// canonical representatives of Z^r modulo the column lattice of t, in the
// same form reduce_mod_lattice produces
std::vector<IVec> residue_reps(const IntMat& t, const Int& cap) {
  SmithForm s = smith_normal_form(t);
  Int count = 1;
  std::vector<Int> d;
  for (int i = 0; i < t.rows(); ++i) {
    d.push_back(s.d.at(i, i));
    count *= d.back();
  }
  if (count > cap) throw std::runtime_error("translation index exceeds the orbit cap");
  IntMat uinv = s.u.inverse_unimodular();
  std::vector<IVec> out;
  IVec z(t.rows(), Int(0));
  while (true) {
    out.push_back(uinv * z);
    int i = 0;
    while (i < t.rows()) {
      z[i] += 1;
      if (z[i] < d[i]) break;
      z[i] = 0;
      ++i;
    }
    if (i == t.rows()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> translation_basis(const IntMat& t) {
  std::vector<IVec> cols;
  for (int j = 0; j < t.cols(); ++j) cols.push_back(t.col(j));
  return cols;
}

// vertex range of a shape: per-coordinate min and max as rationals
std::pair<QVec, QVec> shape_box(const CellShape& s, int r) {
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
  return {lo, hi};
}

int shape_index(const std::vector<CellShape>& shapes, const CellShape& s) {
  for (size_t i = 0; i < shapes.size(); ++i)
    if (shapes[i] == s) return int(i);
  return -1;
}

// the placed image of a cell under gamma followed by translation by den*shift
std::pair<CellShape, IVec> map_cell(const CellShape& s, const IVec& anchor,
                                    const IntMat& gamma) {
  std::vector<IVec> verts;
  for (const auto& v : s.verts) {
    IVec w(v.size());
    for (size_t k = 0; k < v.size(); ++k) w[k] = v[k] + s.den * anchor[k];
    verts.push_back(gamma * w);
  }
  return canonical_cell(s.den, verts);
}

// scaled vertices of the height-one slice of a cone whose rays all sit at
// positive height
std::pair<Int, std::vector<IVec>> slice_of_cone(const RationalCone& c) {
  int r = c.ambient - 1;
  Int den = 1;
  for (const auto& ray : c.rays) den = lcm_int(den, ray[r]);
  std::vector<IVec> verts;
  for (const auto& ray : c.rays) {
    IVec v(r);
    for (int k = 0; k < r; ++k) v[k] = ray[k] * (den / ray[r]);
    verts.push_back(v);
  }
  return {den, verts};
}

CheckReport fail(std::string why) {
  CheckReport rep;
  rep.ok = false;
  rep.failure = std::move(why);
  return rep;
}

}  // namespace

ConeDecomposition decomposition_from_complex(const PeriodicCellComplex& cells,
                                             const AffineAction& action) {
  ConeDecomposition dec;
  dec.rank = cells.rank;
  dec.periodic = true;
  dec.cells = cells;
  dec.action = action;
  if (action.slice_rank != cells.rank)
    throw std::invalid_argument("action rank does not match the complex");
  if (action.translation.rows() != cells.rank || action.translation.cols() != cells.rank)
    throw std::invalid_argument("translation matrix must be square of the slice rank");
  if (action.translation.det() == 0)
    throw std::invalid_argument("translations must span a finite index sublattice");
  if (action.gamma_slice.empty() || !action.gamma_slice[0].is_identity())
    throw std::invalid_argument("group closure must start with the identity");
  return dec;
}

ConeDecomposition decomposition_from_cones(int rank, const std::vector<RationalCone>& cones) {
  ConeDecomposition dec;
  dec.rank = rank;
  dec.periodic = false;
  dec.cones = cones;
  for (const auto& c : cones) {
    if (c.ambient != rank + 1)
      throw std::invalid_argument("cone ambient dimension must be rank + 1");
    for (const auto& ray : c.rays)
      if (ray[rank] < 0) throw std::invalid_argument("cone leaves the upper halfspace");
    for (const auto& l : c.lineality)
      if (l[rank] != 0) throw std::invalid_argument("cone leaves the upper halfspace");
  }
  return dec;
}

RationalCone cone_of_cell(const ConeDecomposition& dec, const PlacedCell& c) {
  if (!dec.periodic) return dec.cones.at(c.shape);
  const CellShape& s = dec.cells.shapes.at(c.shape);
  std::vector<IVec> gens;
  for (const auto& v : s.verts) {
    IVec g(dec.rank + 1);
    for (int k = 0; k < dec.rank; ++k) g[k] = v[k] + s.den * c.anchor[k];
    g[dec.rank] = s.den;
    gens.push_back(primitive(g));
  }
  return cone_from_generators(dec.rank + 1, Side::N, gens);
}

CheckReport check_decomposition(const ConeDecomposition& dec, const CheckOptions& opt) {
  CheckReport rep;
  const int r = dec.rank;

  if (dec.periodic) {
    const auto& shapes = dec.cells.shapes;
    bool has_vertex = false;
    for (const auto& s : shapes) {
      if (s.dim == 0) has_vertex = true;
      RationalCone over = cone_over_shape(s);
      if (!over.pointed()) return fail("cone over a cell is not strongly convex");
      if (over.dim() != s.dim + 1) return fail("cell dimension mismatch");
    }
    if (!has_vertex) return fail("no vertex cell, the central ray is missing");

    // pairwise intersections of top cells land on common faces
    for (int s1 : dec.cells.top) {
      for (int s2 : dec.cells.top) {
        auto [lo1, hi1] = shape_box(shapes[s1], r);
        auto [lo2, hi2] = shape_box(shapes[s2], r);
        RationalCone c1 = cone_over_shape(shapes[s1]);
        // integer translations t with box overlap
        IVec t(r);
        auto walk = [&](auto&& self, int k) -> bool {
          if (k == r) {
            if (s1 == s2 && is_zero(t)) return true;
            PlacedCell p2{s2, t};
            RationalCone c2 = cone_of_cell(dec, p2);
            std::vector<IVec> ineqs(c1.ineqs);
            ineqs.insert(ineqs.end(), c2.ineqs.begin(), c2.ineqs.end());
            std::vector<IVec> eqs(c1.eqs);
            eqs.insert(eqs.end(), c2.eqs.begin(), c2.eqs.end());
            RationalCone meet = cone_from_inequalities(r + 1, Side::N, ineqs, eqs);
            if (meet.is_zero()) return true;
            auto [fden, fverts] = slice_of_cone(meet);
            auto [fs, fanchor] = canonical_cell(fden, fverts);
            int fid = shape_index(shapes, fs);
            if (fid < 0) return false;
            PlacedCell in1{fid, fanchor};
            PlacedCell in2{fid, sub(fanchor, t)};
            const auto& f1 = dec.cells.faces[s1];
            const auto& f2 = dec.cells.faces[s2];
            bool ok1 = std::find(f1.begin(), f1.end(), in1) != f1.end();
            bool ok2 = std::find(f2.begin(), f2.end(), in2) != f2.end();
            return ok1 && ok2;
          }
          Int lo = ceil_rat(lo1[k] - hi2[k]);
          Int hi = floor_rat(hi1[k] - lo2[k]);
          for (Int v = lo; v <= hi; ++v) {
            t[k] = v;
            if (!self(self, k + 1)) return false;
          }
          return true;
        };
        if (!walk(walk, 0))
          return fail("cells " + std::to_string(s1) + " and " + std::to_string(s2) +
                      " shifted by " + to_string(t) + " meet outside a common face");
      }
    }

    // coverage of the slice: periodicity reduces it to the unit box
    const int g = opt.coverage_grid;
    std::vector<QVec> samples;
    {
      QVec p(r);
      auto grid = [&](auto&& self, int k) -> void {
        if (k == r) {
          samples.push_back(p);
          return;
        }
        for (int i = 0; i < g; ++i) {
          p[k] = Rat(2 * i + 1, 2 * g);
          self(self, k + 1);
        }
      };
      grid(grid, 0);
      for (int sid : dec.cells.top) {
        QVec b(r, Rat(0));
        for (const auto& v : shapes[sid].verts)
          for (int k = 0; k < r; ++k)
            b[k] += Rat(v[k], shapes[sid].den * Int(shapes[sid].verts.size()));
        for (int k = 0; k < r; ++k) b[k] -= Rat(floor_rat(b[k]));
        samples.push_back(b);
      }
    }
    for (const auto& p : samples) {
      bool covered = false;
      for (int sid : dec.cells.top) {
        if (covered) break;
        auto [lo, hi] = shape_box(shapes[sid], r);
        RationalCone over = cone_over_shape(shapes[sid]);
        IVec a(r);
        auto anchors = [&](auto&& self, int k) -> void {
          if (covered) return;
          if (k == r) {
            QVec q(r + 1);
            for (int i = 0; i < r; ++i) q[i] = p[i] - Rat(a[i]);
            q[r] = Rat(1);
            if (over.contains(q)) covered = true;
            return;
          }
          for (Int v = ceil_rat(p[k] - hi[k]); v <= floor_rat(p[k] - lo[k]); ++v) {
            a[k] = v;
            self(self, k + 1);
          }
        };
        anchors(anchors, 0);
      }
      if (!covered) return fail("slice point " + to_string(p) + " is not covered");
    }
    return rep;
  }

  // finite mode
  std::map<RationalCone, std::vector<RationalCone>> face_lists;
  RationalCone zero = cone_from_generators(r + 1, Side::N, {});
  bool has_central = false;
  IVec central(r + 1, Int(0));
  central[r] = 1;
  for (const auto& c : dec.cones) {
    if (!c.pointed()) return fail("cone is not strongly convex");
    if (c.rays == std::vector<IVec>{central}) has_central = true;
    face_lists[c] = faces(c);
  }
  if (!has_central) return fail("the central ray is not among the cones");
  std::set<RationalCone> present(dec.cones.begin(), dec.cones.end());
  for (const auto& c : dec.cones)
    for (const auto& f : face_lists[c]) {
      if (f.is_zero()) continue;  // apex face may stay implicit
      if (!present.count(f))
        return fail("face with rays " +
                    (f.rays.empty() ? std::string("{}") : to_string(f.rays[0])) +
                    "... of a cone is missing from the list");
    }
  for (size_t i = 0; i < dec.cones.size(); ++i)
    for (size_t j = i + 1; j < dec.cones.size(); ++j) {
      const RationalCone& c1 = dec.cones[i];
      const RationalCone& c2 = dec.cones[j];
      std::vector<IVec> ineqs(c1.ineqs);
      ineqs.insert(ineqs.end(), c2.ineqs.begin(), c2.ineqs.end());
      std::vector<IVec> eqs(c1.eqs);
      eqs.insert(eqs.end(), c2.eqs.begin(), c2.eqs.end());
      RationalCone meet = cone_from_inequalities(r + 1, Side::N, ineqs, eqs);
      auto is_face_of = [&](const RationalCone& big) {
        for (const auto& f : face_lists[big])
          if (f == meet) return true;
        return false;
      };
      if (!is_face_of(c1) || !is_face_of(c2))
        return fail("cones " + std::to_string(i) + " and " + std::to_string(j) +
                    " meet outside a common face");
    }
  rep.notes.push_back("coverage of the halfspace is not verified for explicit cone lists");
  return rep;
}

CheckReport check_stability(const ConeDecomposition& dec) {
  CheckReport rep;
  if (!dec.periodic) return rep;
  const auto& shapes = dec.cells.shapes;
  IVec zero(dec.rank, Int(0));
  for (size_t gi = 1; gi < dec.action.gamma_slice.size(); ++gi) {
    for (size_t sid = 0; sid < shapes.size(); ++sid) {
      auto [img, anchor] = map_cell(shapes[sid], zero, dec.action.gamma_slice[gi]);
      (void)anchor;
      if (shape_index(shapes, img) < 0)
        return fail("group element " + std::to_string(gi) + " moves cell " +
                    std::to_string(sid) + " off the decomposition");
    }
  }
  return rep;
}

CheckReport check_admissible(const ConeDecomposition& dec, const CheckOptions& opt) {
  CheckReport stab = check_stability(dec);
  if (!stab.ok) return stab;
  try {
    auto orbits = orbit_decomposition(dec, opt.max_orbits);
    CheckReport rep;
    rep.notes.push_back(std::to_string(orbits.size()) + " cell orbits");
    return rep;
  } catch (const std::runtime_error& e) {
    return fail(e.what());
  }
}

int OrbitIndex::orbit_of(const PlacedCell& c) const {
  IVec res = reduce_mod_lattice(c.anchor, tbasis);
  auto it = lookup.find({c.shape, res});
  if (it == lookup.end()) throw std::invalid_argument("cell is not in the orbit index");
  return it->second;
}

std::vector<CellOrbit> orbit_decomposition(const ConeDecomposition& dec, long max_orbits) {
  return orbit_index(dec, max_orbits).orbits;
}

OrbitIndex orbit_index(const ConeDecomposition& dec, long max_orbits) {
  OrbitIndex idx;
  auto& out = idx.orbits;
  if (!dec.periodic) {
    for (size_t i = 0; i < dec.cones.size(); ++i) {
      bool positive = false;
      for (const auto& ray : dec.cones[i].rays)
        if (ray[dec.rank] > 0) positive = true;
      if (!positive) continue;
      CellOrbit o;
      o.rep = PlacedCell{int(i), IVec(dec.rank, Int(0))};
      o.dim = dec.cones[i].dim() - 1;
      o.stabilizer = {AffineElement{IVec(dec.rank, Int(0)), 0}};
      idx.lookup[{int(i), IVec(dec.rank, Int(0))}] = int(out.size());
      out.push_back(o);
    }
    return idx;
  }

  const auto& shapes = dec.cells.shapes;
  const IntMat& t = dec.action.translation;
  auto tbasis = translation_basis(t);
  Int cap = max_orbits;
  auto residues = residue_reps(t, cap);
  Int universe = Int(shapes.size()) * Int(residues.size());
  if (universe > cap) throw std::runtime_error("cell universe exceeds the orbit cap");

  std::map<std::pair<int, IVec>, int> state_id;
  std::vector<std::pair<int, IVec>> states;
  for (size_t s = 0; s < shapes.size(); ++s)
    for (const auto& res : residues) {
      state_id[{int(s), res}] = int(states.size());
      states.push_back({int(s), res});
    }

  std::vector<int> seen(states.size(), 0);
  std::vector<int> orbit_of_state(states.size(), -1);
  for (size_t start = 0; start < states.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> queue{int(start)};
    seen[start] = 1;
    size_t head = 0;
    long size = 0;
    while (head < queue.size()) {
      auto [sid, anchor] = states[queue[head++]];
      ++size;
      for (size_t gi = 1; gi < dec.action.gamma_slice.size(); ++gi) {
        auto [img, a2] = map_cell(shapes[sid], anchor, dec.action.gamma_slice[gi]);
        int iid = shape_index(shapes, img);
        if (iid < 0) throw std::runtime_error("decomposition is not stable under the group");
        IVec res = reduce_mod_lattice(a2, tbasis);
        auto it = state_id.find({iid, res});
        if (it == state_id.end()) throw std::logic_error("residue escaped its class");
        if (!seen[it->second]) {
          seen[it->second] = 1;
          queue.push_back(it->second);
        }
      }
    }

    CellOrbit o;
    auto [sid, anchor] = states[start];
    o.rep = PlacedCell{sid, anchor};
    o.size = size;
    o.dim = shapes[sid].dim;
    for (size_t gi = 0; gi < dec.action.gamma_slice.size(); ++gi) {
      auto [img, a2] = map_cell(shapes[sid], anchor, dec.action.gamma_slice[gi]);
      if (!(img == shapes[sid])) continue;
      auto y = solve_integer(t, sub(anchor, a2));
      if (y) o.stabilizer.push_back(AffineElement{*y, int(gi)});
    }
    for (int q : queue) orbit_of_state[q] = int(out.size());
    out.push_back(o);
  }

  std::vector<int> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(out[a].dim, out[a].rep) < std::tie(out[b].dim, out[b].rep);
  });
  std::vector<int> newpos(out.size());
  std::vector<CellOrbit> sorted;
  sorted.reserve(out.size());
  for (size_t i = 0; i < order.size(); ++i) {
    newpos[order[i]] = int(i);
    sorted.push_back(std::move(out[order[i]]));
  }
  out = std::move(sorted);
  for (size_t st = 0; st < states.size(); ++st)
    idx.lookup[states[st]] = newpos[orbit_of_state[st]];
  idx.tbasis = tbasis;
  return idx;
}

std::vector<PlacedCell> cofaces(const ConeDecomposition& dec, const PlacedCell& wall) {
  std::vector<PlacedCell> out;
  if (!dec.periodic) {
    RationalCone w = cone_of_cell(dec, wall);
    for (size_t j = 0; j < dec.cones.size(); ++j) {
      if (dec.cones[j].dim() != dec.rank + 1) continue;
      for (const auto& f : faces(dec.cones[j]))
        if (f == w) {
          out.push_back(PlacedCell{int(j), IVec(dec.rank, Int(0))});
          break;
        }
    }
    return out;
  }
  for (int ti : dec.cells.top)
    for (const auto& f : dec.cells.faces[ti])
      if (f.shape == wall.shape)
        out.push_back(PlacedCell{ti, sub(wall.anchor, f.anchor)});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace logfan

#include "logfan/degeneration.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace logfan {

namespace {

std::string dim_text(int r) { return std::to_string(r) + " x " + std::to_string(r); }

std::string kato_failure_text(const KatoResult& k) {
  if (k.verdict == KatoVerdict::fails_injectivity) return "the group map is not injective";
  std::string s = "the cokernel has torsion";
  if (!k.cokernel.torsion.empty()) {
    s += " [";
    for (size_t i = 0; i < k.cokernel.torsion.size(); ++i) {
      if (i) s += ", ";
      s += to_string(k.cokernel.torsion[i]);
    }
    s += "]";
  }
  return s;
}

}  // namespace

DerivedData validate(const DegenerationData& d) {
  if (d.rank < 0) throw ValidationError("rank must be nonnegative");
  const int r = d.rank;
  if (d.pairing.rows() != r || d.pairing.cols() != r)
    throw ValidationError("the pairing matrix must be " + dim_text(r));
  IntMat phi = d.phi.value_or(IntMat::identity(r));
  if (phi.rows() != r || phi.cols() != r)
    throw ValidationError("phi must be " + dim_text(r));
  IntMat emb = d.y_embedding.value_or(IntMat::identity(r));
  if (emb.rows() != r || emb.cols() != r)
    throw ValidationError("the Y embedding must be " + dim_text(r));
  if (emb.det() == 0) throw ValidationError("the Y embedding must have finite index");

  DerivedData der;
  der.s = d.pairing * phi;
  if (!der.s.is_symmetric())
    throw ValidationError("the form b(y, phi(y')) is not symmetric");
  auto minors = leading_principal_minors(der.s);
  for (size_t i = 0; i < minors.size(); ++i)
    if (minors[i] <= 0)
      throw ValidationError("the form b(y, phi(y')) is not positive definite: leading minor " +
                            std::to_string(i + 1) + " is " + to_string(minors[i]));

  GroupAction g = d.group;
  if (g.generators.empty()) g.rank = r;
  if (g.rank != r)
    throw ValidationError("the group must act on a lattice of rank " + std::to_string(r));
  for (const auto& gen : g.generators) {
    if (gen.mat.rows() != r || gen.mat.cols() != r)
      throw ValidationError("group generator " + gen.name + " must be " + dim_text(r));
    if (!gen.mat.is_unimodular())
      throw ValidationError("group generator " + gen.name + " is not unimodular");
  }
  try {
    der.closure = group_closure(g);
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }

  for (const auto& gen : g.generators) {
    const IntMat& ga = gen.mat;
    IntMat ge = ga * emb;
    std::vector<IVec> cols;
    for (int j = 0; j < r; ++j) {
      auto y = solve_integer(emb, ge.col(j));
      if (!y) throw ValidationError("group generator " + gen.name + " does not preserve Y");
      cols.push_back(*y);
    }
    IntMat gy = r > 0 ? IntMat::from_cols(cols) : IntMat(0, 0);
    if (!(gy.transpose() * d.pairing * ga == d.pairing))
      throw ValidationError("group generator " + gen.name + " does not preserve the pairing");
    if (!(phi * gy == ga * phi))
      throw ValidationError("group generator " + gen.name + " does not commute with phi");
  }

  if (!d.doubled_shifts.empty() && int(d.doubled_shifts.size()) != r)
    throw ValidationError("shift data must have one entry per Y generator");
  der.doubled_shifts = d.doubled_shifts;
  if (der.doubled_shifts.empty())
    for (int j = 0; j < r; ++j) der.doubled_shifts.push_back(der.s.at(j, j));

  IntMat adjb = d.pairing.adjugate();
  Int detb = d.pairing.det();
  der.form = make_form(adjb * der.s * adjb.transpose(), detb * detb);

  der.action.slice_rank = r;
  der.action.translation = d.pairing.transpose();
  for (const auto& m : der.closure)
    der.action.gamma_slice.push_back(m.inverse_unimodular().transpose());

  Int p = d.group.residue_char != 0 ? d.group.residue_char : d.ground.residue_char;
  if (d.group.residue_char != 0 && d.ground.residue_char != 0 &&
      d.group.residue_char != d.ground.residue_char)
    throw ValidationError("conflicting residue characteristics");
  if (p != 0 && !is_prime(p))
    throw ValidationError("residue characteristic must be 0 or a prime");
  der.residue_char = p;
  return der;
}

std::vector<ShapeChart> chart_survey(const ConeDecomposition& dec, const ModelOptions& opt,
                                     const Int& residue_char) {
  std::vector<int> keys;
  std::vector<RationalCone> cones;
  if (dec.periodic) {
    for (size_t s = 0; s < dec.cells.shapes.size(); ++s) {
      keys.push_back(int(s));
      cones.push_back(cone_over_shape(dec.cells.shapes[s]));
    }
  } else {
    for (size_t i = 0; i < dec.cones.size(); ++i) {
      bool positive = false;
      for (const auto& ray : dec.cones[i].rays)
        if (ray[dec.rank] > 0) positive = true;
      if (positive) {
        keys.push_back(int(i));
        cones.push_back(dec.cones[i]);
      }
    }
  }

  std::vector<ShapeChart> out(keys.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&]() {
    while (!failed.load()) {
      size_t i = next.fetch_add(1);
      if (i >= keys.size()) break;
      try {
        out[i].shape = keys[i];
        out[i].chart = chart_presentation(cones[i], opt.degree_bound);
        out[i].kato = kato_log_smooth_check(f_sigma_dual(cones[i]), opt.general_criterion,
                                            residue_char);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        failed.store(true);
      }
    }
  };
  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

DualComplexSummary dual_complex_summary(const ConeDecomposition& dec, const OrbitIndex& idx) {
  DualComplexSummary d;
  const auto& orbits = idx.orbits;
  int maxdim = 0;
  for (const auto& o : orbits) maxdim = std::max(maxdim, o.dim);
  d.cells_by_dim.assign(size_t(maxdim) + 1, 0);
  for (const auto& o : orbits) d.cells_by_dim[o.dim]++;
  for (size_t k = 0; k < d.cells_by_dim.size(); ++k)
    d.euler += (k % 2 == 0 ? 1 : -1) * d.cells_by_dim[k];

  std::map<int, int> vertex_pos;
  for (size_t i = 0; i < orbits.size(); ++i) {
    if (orbits[i].dim != 0) continue;
    vertex_pos[int(i)] = int(d.vertices.size());
    d.vertices.push_back(
        {int(i), long(orbits[i].stabilizer.size()), orbits[i].rep.shape});
  }

  for (size_t i = 0; i < orbits.size(); ++i) {
    if (orbits[i].dim != 1) continue;
    const PlacedCell& rep = orbits[i].rep;
    std::vector<int> ends;
    if (dec.periodic) {
      for (const auto& f : dec.cells.faces[rep.shape])
        if (dec.cells.shapes[f.shape].dim == 0)
          ends.push_back(vertex_pos.at(
              idx.orbit_of(PlacedCell{f.shape, add(rep.anchor, f.anchor)})));
    } else {
      for (const auto& f : faces(dec.cones[rep.shape])) {
        if (f.dim() != 1) continue;
        for (size_t j = 0; j < dec.cones.size(); ++j)
          if (dec.cones[j] == f) {
            auto it = idx.lookup.find({int(j), IVec(dec.rank, Int(0))});
            if (it != idx.lookup.end()) ends.push_back(vertex_pos.at(it->second));
            break;
          }
      }
    }
    if (ends.size() != 2) continue;
    d.edges.push_back({int(i), ends[0], ends[1], long(orbits[i].stabilizer.size())});
  }

  if (dec.rank == 1 && !d.vertices.empty() && d.vertices.size() == d.edges.size()) {
    std::vector<int> degree(d.vertices.size(), 0);
    std::vector<int> parent(d.vertices.size());
    for (size_t v = 0; v < parent.size(); ++v) parent[v] = int(v);
    auto root = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& e : d.edges) {
      degree[e.from]++;
      degree[e.to]++;
      parent[root(e.from)] = root(e.to);
    }
    bool cycle = true;
    for (size_t v = 0; v < degree.size(); ++v)
      if (degree[v] != 2 || root(int(v)) != root(0)) cycle = false;
    if (cycle) d.cycle_length = long(d.vertices.size());
  }
  return d;
}

TamenessReport tameness_diagnostics(const ConeDecomposition& dec, const OrbitIndex& idx,
                                    const Int& residue_char) {
  TamenessReport t;
  t.residue_char = residue_char;
  for (size_t i = 0; i < idx.orbits.size(); ++i) {
    const auto& o = idx.orbits[i];
    long order = long(o.stabilizer.size());
    t.stabilizer_orders.push_back(order);
    if (residue_char > 0 && Int(order) % residue_char == 0) t.wild_orbits.push_back(int(i));
    if (order <= 1 || !dec.periodic) continue;

    AffineMonoid mon = hilbert_basis(dual_cone(cone_of_cell(dec, o.rep)));
    bool moved = false;
    for (const auto& e : o.stabilizer) {
      if (e.gamma == 0 && is_zero(e.y)) continue;
      IntMat m = dec.action.m_matrix(e);
      for (const auto& g : mon.pointed_gens) {
        if (reduce_mod_lattice(m * g, mon.unit_basis) !=
            reduce_mod_lattice(g, mon.unit_basis)) {
          moved = true;
          break;
        }
      }
      if (moved) break;
    }
    if (moved) t.nontrivial_action_orbits.push_back(int(i));
  }
  return t;
}

ModelReport build_model(const DegenerationData& d, const ModelOptions& opt) {
  ModelReport rep;
  rep.derived = validate(d);
  const DerivedData& der = rep.derived;

  if (d.rank == 0) {
    // no torus part: the model is the smooth ground scheme, with the
    // central ray as its only stratum
    rep.dec = decomposition_from_cones(0, {cone_from_generators(1, Side::N, {{Int(1)}})});
  } else {
    rep.dec = decomposition_from_complex(delaunay_complex(der.form), der.action);
  }

  CheckOptions copt;
  copt.coverage_grid = opt.coverage_grid;
  copt.max_orbits = opt.max_orbits;

  auto fan_rep = check_decomposition(rep.dec, copt);
  rep.notes.insert(rep.notes.end(), fan_rep.notes.begin(), fan_rep.notes.end());
  if (!fan_rep.ok) {
    rep.failed_at = "decomposition";
    rep.failure = fan_rep.failure;
    return rep;
  }

  OrbitIndex idx;
  try {
    auto adm = check_admissible(rep.dec, copt);
    rep.notes.insert(rep.notes.end(), adm.notes.begin(), adm.notes.end());
    if (!adm.ok) {
      rep.failed_at = "admissibility";
      rep.failure = adm.failure;
      return rep;
    }
    idx = orbit_index(rep.dec, opt.max_orbits);
  } catch (const std::exception& e) {
    rep.failed_at = "admissibility";
    rep.failure = e.what();
    return rep;
  }
  rep.orbits = idx.orbits;

  if (d.rank == 0) {
    rep.pol = Polarization{};
    rep.notes.push_back("k = 1");
  } else {
    try {
      rep.pol = polarization_from_form(der.form, rep.dec);
    } catch (const std::exception& e) {
      rep.failed_at = "polarization";
      rep.failure = e.what();
      return rep;
    }
    for (int j = 0; j < rep.dec.rank; ++j) {
      Rat twist = der.form.eval(to_rat(der.action.translation.col(j)));
      if (Rat(der.doubled_shifts[j]) != twist) {
        rep.failed_at = "polarization";
        rep.failure = "doubled shift 2 a(y_" + std::to_string(j) + ") = " +
                      to_string(der.doubled_shifts[j]) +
                      " does not match the twist constant " + to_string(twist);
        return rep;
      }
    }
    auto pol_rep = check_polarization(*rep.pol, rep.dec, copt);
    rep.notes.insert(rep.notes.end(), pol_rep.notes.begin(), pol_rep.notes.end());
    if (!pol_rep.ok) {
      rep.failed_at = "polarization";
      rep.failure = pol_rep.failure;
      return rep;
    }
  }

  rep.charts = chart_survey(rep.dec, opt, der.residue_char);
  for (const auto& sc : rep.charts) {
    if (sc.kato.ok()) continue;
    rep.failed_at = "smoothness";
    rep.failure =
        "chart of cell shape " + std::to_string(sc.shape) + ": " + kato_failure_text(sc.kato);
    return rep;
  }

  rep.dual = dual_complex_summary(rep.dec, idx);
  rep.tameness = tameness_diagnostics(rep.dec, idx, der.residue_char);
  rep.verified = true;
  return rep;
}

}  // namespace logfan

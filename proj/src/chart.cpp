#include "logfan/chart.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace logfan {

namespace {

// union-find over fiber member indices
int uf_find(std::vector<int>& p, int i) {
  while (p[i] != i) i = p[i] = p[p[i]];
  return i;
}

bool geq_componentwise(const std::vector<Int>& a, const std::vector<Int>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

Int total_degree(const std::vector<Int>& e) {
  Int t = 0;
  for (const Int& x : e) t += x;
  return t;
}

std::vector<Int> apply_move(const std::vector<Int>& u, const BinomialRelation& r, bool fwd) {
  const auto& from = fwd ? r.lhs : r.rhs;
  const auto& to = fwd ? r.rhs : r.lhs;
  std::vector<Int> v(u.size());
  for (size_t i = 0; i < u.size(); ++i) v[i] = u[i] - from[i] + to[i];
  return v;
}

}  // namespace

ChartPresentation chart_presentation(const RationalCone& sigma_in_n, int degree_bound) {
  ChartPresentation c;
  c.degree_bound = degree_bound;
  c.smooth_cone = is_smooth_cone(sigma_in_n);
  c.monoid = hilbert_basis(dual_cone(sigma_in_n));
  int n = int(c.monoid.hilbert.size());
  int d = c.monoid.ambient();
  for (int i = 0; i < n; ++i) c.variables.push_back("x" + std::to_string(i));

  // all monomials up to the degree bound, bucketed by their image in M
  std::map<IVec, std::vector<std::vector<Int>>> fibers;
  std::vector<Int> expnt(n, Int(0));
  IVec img(d, Int(0));
  auto rec = [&](auto&& self, int i, int budget) -> void {
    if (i == n) {
      fibers[img].push_back(expnt);
      return;
    }
    self(self, i + 1, budget);
    for (int v = 1; v <= budget; ++v) {
      expnt[i] = v;
      img = add(img, c.monoid.hilbert[i]);
      self(self, i + 1, budget - v);
    }
    if (expnt[i] != 0) {
      img = sub(img, scale(c.monoid.hilbert[i], expnt[i]));
      expnt[i] = 0;
    }
  };
  rec(rec, 0, degree_bound);

  // fibers in increasing order of their smallest total degree, then image
  std::vector<std::pair<std::pair<Int, IVec>, std::vector<std::vector<Int>>*>> order;
  for (auto& [image, members] : fibers) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    Int mind = total_degree(members.front());
    for (const auto& e : members) mind = std::min(mind, total_degree(e));
    order.push_back({{mind, image}, &members});
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::set<BinomialRelation> rels;
  for (auto& [key, membersp] : order) {
    auto& members = *membersp;
    std::map<std::vector<Int>, int> pos;
    for (int i = 0; i < int(members.size()); ++i) pos[members[i]] = i;
    // connect with one relation at a time; the added relation may bridge
    // further members, so recompute components after every insertion
    while (true) {
      std::vector<int> parent(members.size());
      for (int i = 0; i < int(parent.size()); ++i) parent[i] = i;
      for (int i = 0; i < int(members.size()); ++i)
        for (const BinomialRelation& r : rels)
          for (bool fwd : {true, false}) {
            const auto& from = fwd ? r.lhs : r.rhs;
            if (!geq_componentwise(members[i], from)) continue;
            auto it = pos.find(apply_move(members[i], r, fwd));
            if (it != pos.end()) parent[uf_find(parent, i)] = uf_find(parent, it->second);
          }
      int base = uf_find(parent, 0);  // members sorted, 0 is the lex-least
      int other = -1;
      for (int i = 1; i < int(members.size()) && other < 0; ++i)
        if (uf_find(parent, i) != base) other = i;
      if (other < 0) break;
      BinomialRelation r;
      r.lhs.assign(n, Int(0));
      r.rhs.assign(n, Int(0));
      for (int i = 0; i < n; ++i) {
        Int diff = members[other][i] - members[0][i];
        if (diff > 0) r.lhs[i] = diff;
        if (diff < 0) r.rhs[i] = -diff;
      }
      // orient: the (degree, lex)-larger side on the left
      if (std::make_pair(total_degree(r.lhs), r.lhs) <
          std::make_pair(total_degree(r.rhs), r.rhs))
        std::swap(r.lhs, r.rhs);
      rels.insert(r);
    }
  }
  c.relations.assign(rels.begin(), rels.end());

  IVec height(d, Int(0));
  height[d - 1] = 1;
  c.uniformizer = minimal_fiber(c.monoid, height);
  if (c.uniformizer.empty())
    throw HeightError("uniformizer is not in the chart monoid");
  return c;
}

std::string render_monomial(const ChartPresentation& c, const std::vector<Int>& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += c.variables[i];
    if (e[i] != 1) s += "^" + e[i].str();
  }
  return s.empty() ? "1" : s;
}

std::vector<std::string> render_relations(const ChartPresentation& c,
                                          const std::string& uniformizer_name) {
  std::vector<std::string> out;
  for (const BinomialRelation& r : c.relations)
    out.push_back(render_monomial(c, r.lhs) + " = " + render_monomial(c, r.rhs));
  for (const auto& e : c.uniformizer)
    out.push_back(render_monomial(c, e) + " = " + uniformizer_name);
  return out;
}

std::vector<int> inverted_on_face(const ChartPresentation& c, const RationalCone& face) {
  std::vector<int> out;
  for (int i = 0; i < int(c.monoid.hilbert.size()); ++i) {
    const IVec& h = c.monoid.hilbert[i];
    bool orth = true;
    for (const IVec& r : face.rays)
      if (dot(h, r) != 0) orth = false;
    for (const IVec& l : face.lineality)
      if (dot(h, l) != 0) orth = false;
    if (orth) out.push_back(i);
  }
  return out;
}

}  // namespace logfan

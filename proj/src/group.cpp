#include "logfan/group.hpp"

#include <map>

namespace logfan {

std::vector<IntMat> group_closure(const GroupAction& g, size_t max_elements) {
  for (const auto& gen : g.generators) {
    if (gen.mat.rows() != g.rank || gen.mat.cols() != g.rank)
      throw std::invalid_argument("group_closure: generator has wrong shape");
    if (!gen.mat.is_unimodular())
      throw std::invalid_argument("group_closure: generator " + gen.name + " is not unimodular");
  }
  IntMat id = IntMat::identity(g.rank);
  std::vector<IntMat> elems{id};
  std::map<IntMat, int> seen{{id, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    IntMat cur = elems[head];  // copy: elems may reallocate below
    for (const auto& gen : g.generators) {
      IntMat nxt = gen.mat * cur;
      if (seen.emplace(nxt, int(elems.size())).second) {
        elems.push_back(nxt);
        if (elems.size() > max_elements)
          throw std::runtime_error("group_closure: exceeded element cap, group may be infinite");
      }
    }
  }
  if (g.declared_order && *g.declared_order != long(elems.size()))
    throw std::runtime_error("group_closure: declared order " + std::to_string(*g.declared_order) +
                             " but closure has " + std::to_string(elems.size()) + " elements");
  return elems;
}

QVec AffineAction::apply_slice(const AffineElement& e, const QVec& pt) const {
  QVec out = gamma_slice.at(e.gamma) * pt;
  IVec t = translation * e.y;
  for (int i = 0; i < slice_rank; ++i) out[i] += t[i];
  return out;
}

IVec AffineAction::apply_slice(const AffineElement& e, const IVec& pt) const {
  IVec out = gamma_slice.at(e.gamma) * pt;
  IVec t = translation * e.y;
  for (int i = 0; i < slice_rank; ++i) out[i] += t[i];
  return out;
}

IntMat AffineAction::n_matrix(const AffineElement& e) const {
  int r = slice_rank;
  IntMat m(r + 1, r + 1);
  const IntMat& g = gamma_slice.at(e.gamma);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m.at(i, j) = g.at(i, j);
  IVec t = translation * e.y;
  for (int i = 0; i < r; ++i) m.at(i, r) = t[i];
  m.at(r, r) = 1;
  return m;
}

IntMat AffineAction::m_matrix(const AffineElement& e) const {
  return n_matrix(e).inverse_unimodular().transpose();
}

}  // namespace logfan

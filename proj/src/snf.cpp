#include "logfan/snf.hpp"

namespace logfan {

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  int k = std::min(d.rows(), d.cols());
  for (int i = 0; i < k; ++i) out.push_back(d.at(i, i));
  return out;
}

int SmithForm::rank() const {
  int r = 0;
  for (const Int& x : diagonal())
    if (x != 0) ++r;
  return r;
}

// Kannan-Bachem style reduction. Pivot choice: smallest nonzero absolute
// value in the remaining block, which keeps intermediate entries small.
SmithForm smith_normal_form(const IntMat& a) {
  int m = a.rows(), n = a.cols();
  IntMat d = a;
  IntMat u = IntMat::identity(m);
  IntMat v = IntMat::identity(n);

  for (int t = 0; t < std::min(m, n); ++t) {
    // move the smallest nonzero entry of the block to (t,t)
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        if (d.at(i, j) == 0) continue;
        Int mag = abs_int(d.at(i, j));
        if (pi < 0 || mag < best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // block is zero
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }

    bool settled = false;
    while (!settled) {
      settled = true;
      // clear column t; a nonzero remainder is a smaller pivot, swap it up
      for (int i = t + 1; i < m; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = floor_div(d.at(i, t), d.at(t, t));
        if (q != 0) {
          d.add_row(i, t, -q);
          u.add_row(i, t, -q);
        }
        if (d.at(i, t) != 0) {
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          settled = false;
        }
      }
      if (!settled) continue;
      // clear row t the same way
      for (int j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = floor_div(d.at(t, j), d.at(t, t));
        if (q != 0) {
          d.add_col(j, t, -q);
          v.add_col(j, t, -q);
        }
        if (d.at(t, j) != 0) {
          d.swap_cols(t, j);
          v.swap_cols(t, j);
          settled = false;
        }
      }
      if (!settled) continue;
      // divisibility chain: the pivot must divide the remaining block
      for (int i = t + 1; i < m && settled; ++i)
        for (int j = t + 1; j < n && settled; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            settled = false;
          }
    }
  }
  return {u, d, v};
}

CokernelInvariants cokernel_invariants(const IntMat& f) {
  SmithForm s = smith_normal_form(f);
  CokernelInvariants inv;
  std::vector<Int> diag = s.diagonal();
  int rank = 0;
  for (const Int& x : diag) {
    if (x == 0) continue;
    ++rank;
    if (x > 1) inv.torsion.push_back(x);
  }
  inv.free_rank = f.rows() - rank;
  return inv;
}

bool is_injective(const IntMat& f) { return integer_rank(f) == f.cols(); }

int integer_rank(const IntMat& a) { return smith_normal_form(a).rank(); }

std::vector<IVec> integer_kernel_basis(const IntMat& a) {
  SmithForm s = smith_normal_form(a);
  int n = a.cols();
  int r = s.rank();
  std::vector<IVec> out;
  for (int j = r; j < n; ++j) out.push_back(s.v.col(j));
  return out;
}

std::vector<IVec> column_lattice_basis(const IntMat& a) {
  SmithForm s = smith_normal_form(a);
  IntMat uinv = s.u.inverse_unimodular();
  std::vector<IVec> out;
  int k = std::min(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) {
    if (s.d.at(i, i) == 0) continue;
    out.push_back(scale(uinv.col(i), s.d.at(i, i)));
  }
  return out;
}

std::optional<IVec> solve_integer(const IntMat& a, const IVec& b) {
  SmithForm s = smith_normal_form(a);
  IVec c = s.u * b;
  int n = a.cols(), m = a.rows();
  IVec y(n, Int(0));
  int k = std::min(m, n);
  for (int i = 0; i < m; ++i) {
    Int di = i < k ? s.d.at(i, i) : Int(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      y[i] = c[i] / di;
    }
  }
  return s.v * y;
}

std::vector<IVec> hnf_basis(const std::vector<IVec>& gens, int dim) {
  std::vector<IVec> h;
  for (const IVec& g : gens) {
    if (int(g.size()) != dim) throw std::invalid_argument("hnf_basis: wrong dimension");
    if (!is_zero(g)) h.push_back(g);
  }
  int r = 0;
  for (int c = 0; c < dim && r < int(h.size()); ++c) {
    // gcd out column c below row r
    while (true) {
      int p = -1;
      for (int i = r; i < int(h.size()); ++i)
        if (h[i][c] != 0 && (p < 0 || abs_int(h[i][c]) < abs_int(h[p][c]))) p = i;
      if (p < 0) break;
      std::swap(h[r], h[p]);
      if (h[r][c] < 0)
        for (int j = 0; j < dim; ++j) h[r][j] = -h[r][j];
      bool cleared = true;
      for (int i = r + 1; i < int(h.size()); ++i) {
        if (h[i][c] == 0) continue;
        Int q = floor_div(h[i][c], h[r][c]);
        for (int j = 0; j < dim; ++j) h[i][j] -= q * h[r][j];
        if (h[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (r < int(h.size()) && h[r][c] != 0) {
      for (int i = 0; i < r; ++i) {
        Int q = floor_div(h[i][c], h[r][c]);
        if (q != 0)
          for (int j = 0; j < dim; ++j) h[i][j] -= q * h[r][j];
      }
      ++r;
    }
  }
  h.resize(r);
  return h;
}

std::vector<IVec> saturate_lattice(const std::vector<IVec>& gens, int dim) {
  for (const IVec& g : gens)
    if (int(g.size()) != dim) throw std::invalid_argument("saturate_lattice: wrong dimension");
  // covectors vanishing on the span, then their common kernel
  IntMat g(int(gens.size()), dim);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < dim; ++j) g.at(i, j) = gens[i][j];
  std::vector<IVec> covs = integer_kernel_basis(g);
  IntMat e(int(covs.size()), dim);
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < dim; ++j) e.at(i, j) = covs[i][j];
  return integer_kernel_basis(e);
}

}  // namespace logfan

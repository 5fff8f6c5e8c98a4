#include "valtoric/zmatrix.hpp"

#include <stdexcept>

namespace valtoric {

ZMat zmat_identity(int n) {
  ZMat I(static_cast<size_t>(n), ZVec(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

ZMat zmat_mul(const ZMat& A, const ZMat& B) {
  if (A.empty() || B.empty()) return {};
  size_t n = A.size(), m = B[0].size(), k = B.size();
  if (A[0].size() != k) throw std::invalid_argument("zmat_mul: shape mismatch");
  ZMat C(n, ZVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

ZVec zmat_apply(const ZMat& A, const ZVec& v) {
  ZVec w(A.size(), 0);
  for (size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != v.size()) throw std::invalid_argument("zmat_apply: shape mismatch");
    for (size_t j = 0; j < v.size(); ++j) w[i] += A[i][j] * v[j];
  }
  return w;
}

ZMat zmat_transpose(const ZMat& A) {
  if (A.empty()) return {};
  ZMat T(A[0].size(), ZVec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
  return T;
}

mpz_class zmat_det(ZMat A) {
  // Bareiss fraction-free elimination.
  const size_t n = A.size();
  if (n == 0) return 1;
  if (A[0].size() != n) throw std::invalid_argument("zmat_det: not square");
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class num = A[i][j] * A[k][k] - A[i][k] * A[k][j];
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        A[i][j] = q;
      }
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

namespace {

struct SnfWork {
  ZMat A, U, V;
  size_t rows, cols;

  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  }
  void swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < rows; ++k) std::swap(A[k][i], A[k][j]);
    for (size_t k = 0; k < cols; ++k) std::swap(V[k][i], V[k][j]);
  }
  void add_row(size_t dst, size_t src, const mpz_class& f) {  // row dst += f * row src
    for (size_t k = 0; k < cols; ++k) A[dst][k] += f * A[src][k];
    for (size_t k = 0; k < rows; ++k) U[dst][k] += f * U[src][k];
  }
  void add_col(size_t dst, size_t src, const mpz_class& f) {
    for (size_t k = 0; k < rows; ++k) A[k][dst] += f * A[k][src];
    for (size_t k = 0; k < cols; ++k) V[k][dst] += f * V[k][src];
  }
  void negate_row(size_t i) {
    for (size_t k = 0; k < cols; ++k) A[i][k] = -A[i][k];
    for (size_t k = 0; k < rows; ++k) U[i][k] = -U[i][k];
  }

  // Brings A to diagonal form with non-negative entries.
  void diagonalize() {
    const size_t nmin = std::min(rows, cols);
    for (size_t t = 0; t < nmin; ++t) {
      for (;;) {
        bool found = false;
        size_t pi = t, pj = t;
        mpz_class best;
        for (size_t i = t; i < rows; ++i)
          for (size_t j = t; j < cols; ++j) {
            if (A[i][j] == 0) continue;
            mpz_class a = abs(A[i][j]);
            if (!found || a < best) {
              found = true;
              best = a;
              pi = i;
              pj = j;
            }
          }
        if (!found) return;  // trailing block is zero
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = true;
        for (size_t i = t + 1; i < rows; ++i) {
          if (A[i][t] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
          add_row(i, t, -q);
          if (A[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < cols; ++j) {
          if (A[t][j] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
          add_col(j, t, -q);
          if (A[t][j] != 0) clean = false;
        }
        if (clean && row_col_clear(t)) break;
      }
      if (sgn(A[t][t]) < 0) negate_row(t);
    }
  }

  bool row_col_clear(size_t t) const {
    for (size_t i = t + 1; i < rows; ++i)
      if (A[i][t] != 0) return false;
    for (size_t j = t + 1; j < cols; ++j)
      if (A[t][j] != 0) return false;
    return true;
  }
};

}  // namespace

SmithForm smith_normal_form(const ZMat& A0) {
  SnfWork w;
  w.A = A0;
  w.rows = A0.size();
  w.cols = w.rows ? A0[0].size() : 0;
  w.U = zmat_identity(static_cast<int>(w.rows));
  w.V = zmat_identity(static_cast<int>(w.cols));

  const size_t nmin = std::min(w.rows, w.cols);
  for (;;) {
    w.diagonalize();
    // Enforce the divisibility chain; on failure fold the offending entry
    // back into an off-diagonal position and re-diagonalize.
    bool ok = true;
    for (size_t t = 0; t + 1 < nmin && ok; ++t) {
      if (w.A[t][t] == 0) break;
      for (size_t s = t + 1; s < nmin; ++s) {
        if (w.A[s][s] == 0) break;
        if (w.A[s][s] % w.A[t][t] != 0) {
          w.add_col(t, s, 1);  // puts d_s at position (s, t)
          ok = false;
          break;
        }
      }
    }
    if (ok) break;
  }

  SmithForm out;
  out.D = w.A;
  out.U = w.U;
  out.V = w.V;
  out.rank = 0;
  for (size_t t = 0; t < nmin; ++t)
    if (w.A[t][t] != 0) ++out.rank;
  return out;
}

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> f;
  for (int t = 0; t < rank; ++t) f.push_back(D[t][t]);
  return f;
}

std::vector<ZVec> integer_kernel(const ZMat& A) {
  if (A.empty()) return {};
  const size_t n = A[0].size();
  SmithForm s = smith_normal_form(A);
  std::vector<ZVec> basis;
  for (size_t j = static_cast<size_t>(s.rank); j < n; ++j) {
    ZVec col(n);
    for (size_t i = 0; i < n; ++i) col[i] = s.V[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

std::optional<ZVec> lattice_solve(const std::vector<ZVec>& gens, const ZVec& v) {
  const size_t n = v.size();
  for (const auto& g : gens)
    if (g.size() != n) throw std::invalid_argument("lattice_solve: dimension mismatch");
  if (gens.empty()) {
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    return ZVec{};
  }
  // Columns of A are the generators.
  ZMat A(n, ZVec(gens.size(), 0));
  for (size_t j = 0; j < gens.size(); ++j)
    for (size_t i = 0; i < n; ++i) A[i][j] = gens[j][i];
  SmithForm s = smith_normal_form(A);
  ZVec uv = zmat_apply(s.U, v);
  ZVec y(gens.size(), 0);
  for (size_t i = 0; i < n; ++i) {
    if (i < static_cast<size_t>(s.rank)) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), uv[i].get_mpz_t(), s.D[i][i].get_mpz_t());
      if (r != 0) return std::nullopt;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), uv[i].get_mpz_t(), s.D[i][i].get_mpz_t());
      if (i < y.size()) y[i] = q;
    } else if (uv[i] != 0) {
      return std::nullopt;
    }
  }
  return zmat_apply(s.V, y);
}

bool lattice_contains(const std::vector<ZVec>& gens, const ZVec& v) {
  return lattice_solve(gens, v).has_value();
}

int lattice_rank(const std::vector<ZVec>& gens) {
  if (gens.empty()) return 0;
  ZMat A(gens[0].size(), ZVec(gens.size(), 0));
  for (size_t j = 0; j < gens.size(); ++j)
    for (size_t i = 0; i < gens[0].size(); ++i) A[i][j] = gens[j][i];
  return smith_normal_form(A).rank;
}

LatticeIndex lattice_index(const std::vector<ZVec>& A, const std::vector<ZVec>& B) {
  for (const auto& a : A)
    if (!lattice_contains(B, a))
      throw std::invalid_argument("lattice_index: first lattice not contained in second");
  int ra = lattice_rank(A), rb = lattice_rank(B);
  LatticeIndex out;
  if (ra != rb) {
    out.finite = false;
    return out;
  }
  if (A.empty() || B.empty()) {
    out.finite = true;
    out.index = 1;
    return out;
  }
  // Coordinates of each A-generator in a lattice basis of B, read off
  // through B's Smith form: coord_i(x) = (U x)_i / d_i.
  const size_t n = B[0].size();
  ZMat Bm(n, ZVec(B.size(), 0));
  for (size_t j = 0; j < B.size(); ++j)
    for (size_t i = 0; i < n; ++i) Bm[i][j] = B[j][i];
  SmithForm sb = smith_normal_form(Bm);
  ZMat M(static_cast<size_t>(rb), ZVec(A.size(), 0));
  for (size_t j = 0; j < A.size(); ++j) {
    ZVec ux = zmat_apply(sb.U, A[j]);
    for (int i = 0; i < rb; ++i) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), ux[static_cast<size_t>(i)].get_mpz_t(),
                   sb.D[static_cast<size_t>(i)][static_cast<size_t>(i)].get_mpz_t());
      M[static_cast<size_t>(i)][j] = q;
    }
  }
  SmithForm sm = smith_normal_form(M);
  out.finite = true;
  out.index = 1;
  for (const auto& f : sm.invariant_factors()) out.index *= f;
  return out;
}

bool lattice_saturated(const std::vector<ZVec>& gens) {
  if (gens.empty()) return true;
  ZMat A(gens[0].size(), ZVec(gens.size(), 0));
  for (size_t j = 0; j < gens.size(); ++j)
    for (size_t i = 0; i < gens[0].size(); ++i) A[i][j] = gens[j][i];
  SmithForm s = smith_normal_form(A);
  for (const auto& f : s.invariant_factors())
    if (f != 1) return false;
  return true;
}

}  // namespace valtoric

#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace valtoric {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;  // row-major

ZMat zmat_identity(int n);
ZMat zmat_mul(const ZMat& A, const ZMat& B);
ZVec zmat_apply(const ZMat& A, const ZVec& v);
ZMat zmat_transpose(const ZMat& A);
mpz_class zmat_det(ZMat A);

/// U*A*V = D with U, V unimodular and D in Smith normal form
/// (diagonal, d1 | d2 | ..., non-negative).
struct SmithForm {
  ZMat D, U, V;
  int rank = 0;
  std::vector<mpz_class> invariant_factors() const;
};

SmithForm smith_normal_form(const ZMat& A);

/// Basis of the integer kernel {x : A x = 0}, as column vectors.
std::vector<ZVec> integer_kernel(const ZMat& A);

/// Integer solution x of (columns of gens) * x = v, if one exists.
std::optional<ZVec> lattice_solve(const std::vector<ZVec>& gens, const ZVec& v);

bool lattice_contains(const std::vector<ZVec>& gens, const ZVec& v);

struct LatticeIndex {
  bool finite = false;
  mpz_class index;  // meaningful when finite
};

/// Index [lattice(B) : lattice(A)] for lattice(A) contained in lattice(B).
/// Throws when A is not contained in lattice(B).
LatticeIndex lattice_index(const std::vector<ZVec>& A, const std::vector<ZVec>& B);

int lattice_rank(const std::vector<ZVec>& gens);

/// All invariant factors of the matrix whose columns are gens equal 1.
bool lattice_saturated(const std::vector<ZVec>& gens);

}  // namespace valtoric

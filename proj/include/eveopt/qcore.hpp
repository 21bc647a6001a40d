#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace eveopt {

using Complex = std::complex<double>;
using Ket = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

// Tolerance hierarchy: construction-level rounding, verification checks,
// acceptance thresholds.
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kVerifyTol = 1e-10;
inline constexpr double kAcceptTol = 1e-9;

bool all_finite(const Ket& k);
bool all_finite(const Operator& op);
bool is_unit(const Ket& k, double tol = kVerifyTol);
bool is_hermitian(const Operator& op, double tol = kConstructTol);

Ket basis_ket(int dim, int index);
Ket ket2(Complex a, Complex b);

/// Kronecker product, a-index major: (a ⊗ b)[i*b.size() + j] = a[i] * b[j].
Ket tensor_product(const Ket& a, const Ket& b);

/// Trace out the leading factor of an operator on a (first_dim x rest)
/// product space, indices first-factor major.
Operator partial_trace_first(const Operator& op, int first_dim = 2);

struct EigenSystem {
  Eigen::VectorXd values;    // descending
  std::vector<Ket> vectors;  // orthonormal, same order

  Operator reconstruct() const;
};

/// Hermitian eigendecomposition with a deterministic representative:
/// eigenvalues sorted descending; inside any cluster of eigenvalues closer
/// than `tol` the solver's arbitrary vectors are replaced by a pivoted
/// Gram-Schmidt basis of the cluster subspace seeded with the canonical
/// axes; each vector's first component of magnitude > tol is made real
/// and positive. Throws std::invalid_argument unless op is Hermitian
/// within `tol`.
EigenSystem hermitian_eigensystem(const Operator& op, double tol = 1e-9);

/// Sum of |eigenvalue| over the spectrum of a Hermitian operator.
double trace_norm(const Operator& op);

/// Probe basis E0..E3; the 4-dim probe coordinates are indexed by it, so the
/// default returns the canonical axes. `perm` relabels slots: entry i gives
/// the axis assigned to slot i ({0,3,2,1} yields the alternative ordering
/// whose u-v expressions mirror the x-y ones).
std::array<Ket, 4> canonical_probe_basis(
    const std::array<int, 4>& perm = {0, 1, 2, 3});

/// (Phi+, Phi-, Psi+, Psi-): (E0 ± E3)/√2 and (E2 ± E1)/√2.
std::array<Ket, 4> bell_basis();

/// Conjugate-basis change of one qubit, |x⟩ = (|u⟩+|v⟩)/√2 and
/// |y⟩ = (|u⟩−|v⟩)/√2; its own inverse.
Ket uv_from_xy(const Ket& k);

}  // namespace eveopt

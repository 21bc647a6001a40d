#include "eveopt/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eveopt {

bool all_finite(const Ket& k) {
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i].real()) || !std::isfinite(k[i].imag())) return false;
  }
  return true;
}

bool all_finite(const Operator& op) {
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.cols(); ++j) {
      if (!std::isfinite(op(i, j).real()) || !std::isfinite(op(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_unit(const Ket& k, double tol) {
  return all_finite(k) && std::abs(k.norm() - 1.0) <= tol;
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.rows() != op.cols() || !all_finite(op)) return false;
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Ket basis_ket(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw std::invalid_argument("basis_ket: index out of range");
  }
  Ket k = Ket::Zero(dim);
  k[index] = 1.0;
  return k;
}

Ket ket2(Complex a, Complex b) {
  Ket k(2);
  k << a, b;
  return k;
}

Ket tensor_product(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = a[i] * b[j];
    }
  }
  return out;
}

Operator partial_trace_first(const Operator& op, int first_dim) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("partial_trace_first: operator not square");
  }
  if (first_dim <= 0 || op.rows() % first_dim != 0) {
    throw std::invalid_argument("partial_trace_first: dimension mismatch");
  }
  const Eigen::Index rest = op.rows() / first_dim;
  Operator out = Operator::Zero(rest, rest);
  for (Eigen::Index a = 0; a < first_dim; ++a) {
    out += op.block(a * rest, a * rest, rest, rest);
  }
  return out;
}

Operator EigenSystem::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Operator out = Operator::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out += values[i] * (vectors[i] * vectors[i].adjoint());
  }
  return out;
}

namespace {

// Replace the vectors of a degenerate cluster by a pivoted Gram-Schmidt basis
// of the subspace they span, seeded with the canonical axes. Depends only on
// the subspace, not on the solver's arbitrary choice inside it.
void canonicalize_cluster(std::vector<Ket>& vecs, int lo, int hi) {
  const Eigen::Index dim = vecs[lo].size();
  Operator proj = Operator::Zero(dim, dim);
  for (int i = lo; i < hi; ++i) proj += vecs[i] * vecs[i].adjoint();

  std::vector<Ket> chosen;
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  while (static_cast<int>(chosen.size()) < hi - lo) {
    double best_norm = -1.0;
    Eigen::Index best_axis = -1;
    Ket best;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      Ket w = proj.col(k);  // proj * e_k
      for (const Ket& u : chosen) w -= u.dot(w) * u;
      const double n = w.norm();
      if (n > best_norm + 1e-15) {
        best_norm = n;
        best_axis = k;
        best = std::move(w);
      }
    }
    used[static_cast<std::size_t>(best_axis)] = true;
    chosen.push_back(best / best_norm);
  }
  for (int i = lo; i < hi; ++i) vecs[i] = chosen[static_cast<std::size_t>(i - lo)];
}

void fix_phase(Ket& v, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > tol) {
      v *= std::conj(v[i]) / m;
      return;
    }
  }
}

}  // namespace

EigenSystem hermitian_eigensystem(const Operator& op, double tol) {
  if (!is_hermitian(op, tol)) {
    throw std::invalid_argument("hermitian_eigensystem: operator not Hermitian within tol");
  }
  const Operator sym = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigensystem: eigensolver failed");
  }

  const Eigen::Index n = sym.rows();
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {  // ascending -> descending
    out.values[i] = solver.eigenvalues()[n - 1 - i];
    out.vectors[static_cast<std::size_t>(i)] = solver.eigenvectors().col(n - 1 - i);
  }

  int lo = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || out.values[i - 1] - out.values[i] >= tol) {
      if (i - lo > 1) canonicalize_cluster(out.vectors, lo, i);
      lo = i;
    }
  }
  for (auto& v : out.vectors) fix_phase(v, tol);
  return out;
}

double trace_norm(const Operator& op) {
  return hermitian_eigensystem(op).values.cwiseAbs().sum();
}

std::array<Ket, 4> canonical_probe_basis(const std::array<int, 4>& perm) {
  std::array<bool, 4> seen{};
  for (int p : perm) {
    if (p < 0 || p > 3 || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("canonical_probe_basis: perm is not a permutation of 0..3");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::array<Ket, 4> basis{};
  for (int i = 0; i < 4; ++i) basis[static_cast<std::size_t>(i)] = basis_ket(4, perm[static_cast<std::size_t>(i)]);
  return basis;
}

std::array<Ket, 4> bell_basis() {
  const auto e = canonical_probe_basis();
  const double s = 1.0 / std::sqrt(2.0);
  return {s * (e[0] + e[3]), s * (e[0] - e[3]), s * (e[2] + e[1]), s * (e[2] - e[1])};
}

Ket uv_from_xy(const Ket& k) {
  if (k.size() != 2) throw std::invalid_argument("uv_from_xy: expected a qubit ket");
  const double s = 1.0 / std::sqrt(2.0);
  return ket2(s * (k[0] + k[1]), s * (k[0] - k[1]));
}

}  // namespace eveopt

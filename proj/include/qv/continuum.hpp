#pragma once

#include <map>

#include "qv/ncvalue.hpp"

// Two-particle canonical observables and a Gaussian-regularized EPR state on
// a periodic 1D grid. The relative coordinate is the ring distance (wrapped
// to [-L/2, L/2)), and the single-particle positions are defined through the
// inverse canonical relations X_1 = X + R/2, X_2 = X - R/2, so the canonical
// combinations hold exactly as operator identities on the torus. Momenta are
// spectral (diagonal in the discrete Fourier basis), which makes the
// commensurate plane wave an exact eigenstate. Operators are never
// materialized at full dimension N^2; application works on the N x N
// amplitude array.

namespace qv {

class GridSystem {
 public:
  /// N points per particle (N even, >= 8) on [-L/2, L/2); total dim N^2.
  GridSystem(int n_points, double box_length);

  int n() const { return n_; }
  double box() const { return box_; }
  double spacing() const { return box_ / n_; }
  double position(int i) const { return -box_ / 2.0 + spacing() * i; }
  Index dim() const { return static_cast<Index>(n_) * n_; }

  /// Single-particle spectral momentum matrix (Hermitian circulant, N x N)
  /// with wavenumbers 2 pi k / L, k in [-N/2, N/2).
  const Matrix& momentum_1d() const { return p1d_; }

  /// Ring distance between grid points i and j, in [-L/2, L/2).
  double wrapped_difference(int i, int j) const;

 private:
  int n_;
  double box_;
  Matrix p1d_;
};

/// Real coefficients over the Hermitian generator set {center-of-mass
/// coordinate, wrapped relative coordinate, momentum of particle 1, momentum
/// of particle 2}. Every canonical observable is such a combination, so sums
/// and scalings stay inside the family.
struct GridOperator {
  double com = 0.0;
  double rel = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  friend GridOperator operator+(const GridOperator& a, const GridOperator& b) {
    return {a.com + b.com, a.rel + b.rel, a.p1 + b.p1, a.p2 + b.p2};
  }
  friend GridOperator operator-(const GridOperator& a, const GridOperator& b) {
    return {a.com - b.com, a.rel - b.rel, a.p1 - b.p1, a.p2 - b.p2};
  }
  friend GridOperator operator*(double s, const GridOperator& a) {
    return {s * a.com, s * a.rel, s * a.p1, s * a.p2};
  }
};

/// {X1, X2, P1, P2, X, P, R, Q}: X = (X1+X2)/2, P = P1+P2, R = X1-X2,
/// Q = (P1-P2)/2, with [X,P] = i = [R,Q] the only nonzero commutators.
std::map<std::string, GridOperator> canonical_observables();

Vector apply(const GridSystem& g, const GridOperator& op, const Vector& phi);
Complex grid_expectation(const GridSystem& g, const GridOperator& op, const StateVector& phi);

/// Materializes the operator densely; intended for small-N cross-checks only.
Observable dense_observable(const GridSystem& g, const GridOperator& op);

struct EPRParams {
  double p_total = 0.0;  // total momentum; p/2 must sit on the 2 pi / L lattice
  double r_o = 0.0;      // separation; momentum units hbar = 1
  double width = 1.0;    // Gaussian width regularizing the separation delta

  void validate(const GridSystem& g) const;
};

/// Normalized wrapped-Gaussian-times-plane-wave state
///   phi(x1, x2) ~ delta_w(x1 - x2 - r_o) e^{i p (x1 + x2) / 2},
/// the regularized fixed-(P, R) EPR state; entangled across the particles but
/// a product in center-of-mass/relative variables.
StateVector epr_state(const GridSystem& g, const EPRParams& p);

/// Same tuple as nc_value, evaluated matrix-free on the grid.
NCValue grid_nc_value(const GridSystem& g, const GridOperator& op, const StateVector& phi);

struct EprIdentityReport {
  std::map<std::string, double> residuals;     // keyed by identity name
  std::map<std::string, double> expectations;  // xbar, x1bar, ..., qbar, rbar
  double v_p_norm = 0.0;
  double v_r_norm_sq = 0.0;
  double expected_v_r_sq = 0.0;  // width^2 / 2
  int particle_schmidt_count = 0;  // singular values above 1e-6 across particles
  int rotated_rank = 0;            // after the exact lattice shear; 1 = product
  bool rotation_checked = false;
};

/// Runs the linearity, eigenstate-cancellation and expectation-table checks
/// for the regularized EPR state and reports every residual.
EprIdentityReport verify_epr_identities(const GridSystem& g, const EPRParams& p);

/// Singular values of the N x N amplitude array across the particle cut.
Eigen::VectorXd particle_schmidt_values(const GridSystem& g, const StateVector& phi);

/// Rank of the shear-aligned array M[i,k] = phi[i, (i-k) mod N]. The shear is
/// the lattice-exact 45-degree rotation to (center-of-mass, relative) indexing
/// and is a bijection for every N; rank 1 means no entanglement in those
/// variables.
int sheared_schmidt_rank(const GridSystem& g, const StateVector& phi, double tol = 1e-6);

}  // namespace qv

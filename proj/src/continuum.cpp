#include "qv/continuum.hpp"

#include <cmath>
#include <numbers>

namespace qv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using AmpArray = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>;

// The N^2 state vector viewed as the N x N amplitude array phi[i, j]
// (row = particle 1, column = particle 2; index = i * N + j).
AmpArray as_array(const GridSystem& g, const Vector& phi) {
  return AmpArray(phi.data(), g.n(), g.n());
}

}  // namespace

GridSystem::GridSystem(int n_points, double box_length) : n_(n_points), box_(box_length) {
  if (n_ < 8 || n_ % 2 != 0) {
    throw std::invalid_argument("GridSystem: need an even number of points, at least 8");
  }
  if (!(box_ > 0.0)) throw std::invalid_argument("GridSystem: box length must be positive");

  // Hermitian circulant p1d[a,b] = (1/N) sum_k kappa_k e^{2 pi i k (a-b) / N},
  // kappa_k = 2 pi k~ / L with k~ in [-N/2, N/2).
  Vector first_row = Vector::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    const int folded = (k < n_ / 2) ? k : k - n_;
    const double kappa = kTwoPi * folded / box_;
    for (int d = 0; d < n_; ++d) {
      first_row(d) += kappa * std::polar(1.0 / n_, kTwoPi * k * d / n_);
    }
  }
  p1d_.resize(n_, n_);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      p1d_(a, b) = first_row(((a - b) % n_ + n_) % n_);
    }
  }
}

double GridSystem::wrapped_difference(int i, int j) const {
  const double d = position(i) - position(j);
  return d - box_ * std::floor(d / box_ + 0.5);
}

std::map<std::string, GridOperator> canonical_observables() {
  const GridOperator x1{1.0, 0.5, 0.0, 0.0};
  const GridOperator x2{1.0, -0.5, 0.0, 0.0};
  const GridOperator p1{0.0, 0.0, 1.0, 0.0};
  const GridOperator p2{0.0, 0.0, 0.0, 1.0};
  return {{"X1", x1},
          {"X2", x2},
          {"P1", p1},
          {"P2", p2},
          {"X", 0.5 * (x1 + x2)},
          {"P", p1 + p2},
          {"R", x1 - x2},
          {"Q", 0.5 * (p1 - p2)}};
}

Vector apply(const GridSystem& g, const GridOperator& op, const Vector& phi) {
  if (phi.size() != g.dim()) throw std::invalid_argument("apply: state does not match the grid");
  const int n = g.n();
  const auto arr = as_array(g, phi);

  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(n, n);
  out.setZero();
  if (op.com != 0.0 || op.rel != 0.0) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double diag = op.com * 0.5 * (g.position(i) + g.position(j)) +
                            op.rel * g.wrapped_difference(i, j);
        out(i, j) += diag * arr(i, j);
      }
    }
  }
  if (op.p1 != 0.0) out.noalias() += op.p1 * (g.momentum_1d() * arr);
  if (op.p2 != 0.0) out.noalias() += op.p2 * (arr * g.momentum_1d().transpose());

  return Eigen::Map<const Vector>(out.data(), g.dim());
}

Complex grid_expectation(const GridSystem& g, const GridOperator& op, const StateVector& phi) {
  return phi.amplitudes().dot(apply(g, op, phi.amplitudes()));
}

Observable dense_observable(const GridSystem& g, const GridOperator& op) {
  Matrix m(g.dim(), g.dim());
  Vector basis = Vector::Zero(g.dim());
  for (Index c = 0; c < g.dim(); ++c) {
    basis(c) = 1.0;
    m.col(c) = apply(g, op, basis);
    basis(c) = 0.0;
  }
  return Observable(std::move(m));
}

void EPRParams::validate(const GridSystem& g) const {
  const double steps = (p_total / 2.0) / (kTwoPi / g.box());
  if (std::abs(steps - std::round(steps)) > 1e-9) {
    throw std::invalid_argument(
        "EPRParams: p_total/2 must be an integer multiple of 2 pi / L so the plane wave is "
        "exactly periodic");
  }
  if (!(width >= 3.0 * g.spacing() && width <= g.box() / 10.0)) {
    throw std::invalid_argument(
        "EPRParams: width must lie in [3 spacing, L/10] (resolved and untruncated)");
  }
}

StateVector epr_state(const GridSystem& g, const EPRParams& p) {
  p.validate(g);
  const int n = g.n();
  const double half_p = p.p_total / 2.0;

  // Wrapped Gaussian in the ring distance; three images cover the torus to
  // well below double precision for width <= L/10.
  auto regularizer = [&](double d) {
    double sum = 0.0;
    for (int image = -2; image <= 2; ++image) {
      const double u = d - p.r_o + image * g.box();
      sum += std::exp(-u * u / (2.0 * p.width * p.width));
    }
    return sum;
  };

  Vector amps(g.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double envelope = regularizer(g.wrapped_difference(i, j));
      const double com_phase = half_p * (g.position(i) + g.position(j));
      amps(static_cast<Index>(i) * n + j) = envelope * std::polar(1.0, com_phase);
    }
  }
  return StateVector(std::move(amps));
}

NCValue grid_nc_value(const GridSystem& g, const GridOperator& op, const StateVector& phi) {
  const Vector applied = apply(g, op, phi.amplitudes());
  const Complex f = phi.amplitudes().dot(applied);
  // Hermitian operator: sum_m conj(z_m) B_mn = conj((B z)_n).
  Vector v = applied.conjugate() - f * phi.amplitudes().conjugate();
  return NCValue{f, std::move(v)};
}

Eigen::VectorXd particle_schmidt_values(const GridSystem& g, const StateVector& phi) {
  Matrix arr = as_array(g, phi.amplitudes());
  Eigen::JacobiSVD<Matrix> svd(arr);
  return svd.singularValues();
}

int sheared_schmidt_rank(const GridSystem& g, const StateVector& phi, double tol) {
  const int n = g.n();
  const auto arr = as_array(g, phi.amplitudes());
  Matrix sheared(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      sheared(i, k) = arr(i, ((i - k) % n + n) % n);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(sheared);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) return 0;
  return static_cast<int>((sv.array() > tol * sv(0)).count());
}

EprIdentityReport verify_epr_identities(const GridSystem& g, const EPRParams& p) {
  const StateVector phi = epr_state(g, p);
  const auto ops = canonical_observables();

  auto value = [&](const char* name) { return grid_nc_value(g, ops.at(name), phi); };
  const NCValue x1 = value("X1"), x2 = value("X2"), p1 = value("P1"), p2 = value("P2");
  const NCValue x = value("X"), pt = value("P"), r = value("R"), q = value("Q");

  auto combo_residual = [](const NCValue& lhs, Complex fa, const NCValue& a, Complex fb,
                           const NCValue& b) {
    const Complex f = fa * a.f + fb * b.f;
    const Vector v = fa * a.v + fb * b.v;
    return std::max(std::abs(lhs.f - f), max_abs_diff(lhs.v, v));
  };

  EprIdentityReport report;
  report.residuals["linearity_x"] = combo_residual(x, 0.5, x1, 0.5, x2);
  report.residuals["linearity_p"] = combo_residual(pt, 1.0, p1, 1.0, p2);
  report.residuals["linearity_r"] = combo_residual(r, 1.0, x1, -1.0, x2);
  report.residuals["linearity_q"] = combo_residual(q, 0.5, p1, -0.5, p2);

  report.v_p_norm = std::sqrt(uncertainty(pt));
  report.v_r_norm_sq = uncertainty(r);
  report.expected_v_r_sq = p.width * p.width / 2.0;
  report.residuals["v_p_norm"] = report.v_p_norm;
  report.residuals["v_r_sq_rel_err"] =
      std::abs(report.v_r_norm_sq - report.expected_v_r_sq) / report.expected_v_r_sq;

  const double xbar = x.f.real(), rbar = r.f.real(), qbar = q.f.real();
  const double x1bar = x1.f.real(), x2bar = x2.f.real();
  const double p1bar = p1.f.real(), p2bar = p2.f.real();
  report.expectations = {{"xbar", xbar},   {"rbar", rbar},   {"qbar", qbar},
                         {"x1bar", x1bar}, {"x2bar", x2bar}, {"p1bar", p1bar},
                         {"p2bar", p2bar}};

  report.residuals["x1_minus_x2_vs_ro"] = std::abs((x1bar - x2bar) - p.r_o);
  report.residuals["p1_plus_p2_vs_p"] = std::abs((p1bar + p2bar) - p.p_total);
  report.residuals["x1_vs_xbar_plus_half_ro"] = std::abs(x1bar - (xbar + p.r_o / 2.0));
  report.residuals["x2_vs_xbar_minus_half_ro"] = std::abs(x2bar - (xbar - p.r_o / 2.0));
  report.residuals["p1_vs_half_p_plus_qbar"] = std::abs(p1bar - (p.p_total / 2.0 + qbar));
  report.residuals["p2_vs_half_p_minus_qbar"] = std::abs(p2bar - (p.p_total / 2.0 - qbar));
  report.residuals["qbar_abs"] = std::abs(qbar);

  report.particle_schmidt_count =
      static_cast<int>((particle_schmidt_values(g, phi).array() > 1e-6).count());
  report.rotated_rank = sheared_schmidt_rank(g, phi);
  report.rotation_checked = true;
  return report;
}

}  // namespace qv

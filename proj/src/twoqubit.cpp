#include "qv/twoqubit.hpp"

#include <cmath>
#include <numbers>

namespace qv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex phase(double angle) { return std::polar(1.0, angle); }

Matrix cnot_matrix() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

}  // namespace

void TwoQubitParams::validate() const {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("TwoQubitParams: r must be in [0,1]");
  if (!(theta_a >= 0.0 && theta_a <= std::numbers::pi) ||
      !(theta_b >= 0.0 && theta_b <= std::numbers::pi)) {
    throw std::invalid_argument("TwoQubitParams: theta angles must be in [0,pi]");
  }
  if (!(zeta >= 0.0 && zeta < kTwoPi) || !(psi_a >= 0.0 && psi_a < kTwoPi) ||
      !(psi_b >= 0.0 && psi_b < kTwoPi)) {
    throw std::invalid_argument("TwoQubitParams: phase angles must be in [0,2pi)");
  }
}

StateVector state_from_params(const TwoQubitParams& p) {
  p.validate();
  const double qp = std::sqrt((1.0 + p.r) / 2.0);
  const double qm = std::sqrt((1.0 - p.r) / 2.0);
  const Complex ca = std::cos(p.theta_a / 2.0) * phase(-p.psi_a / 2.0);
  const Complex sa = std::sin(p.theta_a / 2.0) * phase(p.psi_a / 2.0);
  const Complex cb = std::cos(p.theta_b / 2.0) * phase(-p.psi_b / 2.0);
  const Complex sb = std::sin(p.theta_b / 2.0) * phase(p.psi_b / 2.0);
  const Complex em = phase(-p.zeta / 2.0) * qp;
  const Complex ep = phase(p.zeta / 2.0) * qm;

  Vector z(4);
  z(0) = em * ca * cb + ep * std::conj(sa) * std::conj(sb);
  z(1) = em * ca * sb - ep * std::conj(sa) * std::conj(cb);
  z(2) = em * sa * cb - ep * std::conj(ca) * std::conj(sb);
  z(3) = em * sa * sb + ep * std::conj(ca) * std::conj(cb);
  return StateVector(std::move(z), {2, 2});
}

double entanglement(const TwoQubitParams& p) {
  p.validate();
  return std::sqrt(1.0 - p.r * p.r);
}

Unitary schmidt_prep_unitary(double r, double zeta) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("schmidt_prep_unitary: r in [0,1]");
  const double qp = std::sqrt((1.0 + r) / 2.0);
  const double qm = std::sqrt((1.0 - r) / 2.0);
  Matrix u = Matrix::Identity(4, 4);
  u(0, 0) = phase(-zeta / 2.0) * qp;
  u(0, 3) = -phase(-zeta / 2.0) * qm;
  u(3, 0) = phase(zeta / 2.0) * qm;
  u(3, 3) = phase(zeta / 2.0) * qp;
  return Unitary(std::move(u));
}

Unitary prep_unitary(const TwoQubitParams& p) {
  p.validate();
  const Complex ca = std::cos(p.theta_a / 2.0) * phase(-p.psi_a / 2.0);
  const Complex sa = std::sin(p.theta_a / 2.0) * phase(p.psi_a / 2.0);
  const Complex cb = std::cos(p.theta_b / 2.0) * phase(-p.psi_b / 2.0);
  const Complex sb = std::sin(p.theta_b / 2.0) * phase(p.psi_b / 2.0);
  Matrix ua(2, 2), ub(2, 2);
  ua << ca, -std::conj(sa), sa, std::conj(ca);
  ub << cb, -std::conj(sb), sb, std::conj(cb);
  return Unitary(tensor(ua, ub) * schmidt_prep_unitary(p.r, p.zeta).matrix());
}

std::map<std::string, Matrix> closed_form_dh(double r, double zeta) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("closed_form_dh: r in [0,1]");
  const Complex z00 = phase(-zeta / 2.0) * std::sqrt((1.0 + r) / 2.0);
  const Complex z11 = phase(zeta / 2.0) * std::sqrt((1.0 - r) / 2.0);
  const Complex z00b = std::conj(z00);
  const Complex z11b = std::conj(z11);
  const double cross = std::sqrt(1.0 - r * r);  // = 2 |z00||z11|

  Matrix s1a = Matrix::Zero(4, 4);
  s1a(0, 1) = z11b; s1a(0, 2) = z00b;
  s1a(1, 0) = z11;  s1a(1, 3) = z00b;
  s1a(2, 0) = z00;  s1a(2, 3) = -z11b;
  s1a(3, 1) = z00;  s1a(3, 2) = -z11;

  Matrix s1b = Matrix::Zero(4, 4);
  s1b(0, 1) = z00b; s1b(0, 2) = z11b;
  s1b(1, 0) = z00;  s1b(1, 3) = -z11b;
  s1b(2, 0) = z11;  s1b(2, 3) = z00b;
  s1b(3, 1) = -z11; s1b(3, 2) = z00;

  Matrix s3a = Matrix::Zero(4, 4);
  s3a(0, 0) = r;      s3a(0, 3) = -cross;
  s3a(1, 1) = 1.0;    s3a(2, 2) = -1.0;
  s3a(3, 0) = -cross; s3a(3, 3) = -r;

  // Same corner block as sigma3A; the middle block flips sign because the
  // preparation acts as identity on |01>, |10>, where sigma_3 x I and
  // I x sigma_3 differ.
  Matrix s3b = s3a;
  s3b(1, 1) = -1.0;
  s3b(2, 2) = 1.0;

  return {{"sigma1A", std::move(s1a)},
          {"sigma1B", std::move(s1b)},
          {"sigma3A", std::move(s3a)},
          {"sigma3B", std::move(s3b)}};
}

std::map<std::string, NCValue> closed_form_nc(double r, double zeta) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("closed_form_nc: r in [0,1]");
  const Complex z00 = phase(-zeta / 2.0) * std::sqrt((1.0 + r) / 2.0);
  const Complex z11 = phase(zeta / 2.0) * std::sqrt((1.0 - r) / 2.0);

  NCValue s1a{Complex(0.0), Vector::Zero(4)};
  s1a.v(1) = std::conj(z11);
  s1a.v(2) = std::conj(z00);

  NCValue s1b{Complex(0.0), Vector::Zero(4)};
  s1b.v(1) = std::conj(z00);
  s1b.v(2) = std::conj(z11);

  NCValue s3a{Complex(r), Vector::Zero(4)};
  s3a.v(0) = (1.0 - r) * std::conj(z00);
  s3a.v(3) = -(1.0 + r) * std::conj(z11);

  return {{"sigma1A", s1a}, {"sigma1B", s1b}, {"sigma3A", s3a}, {"sigma3B", s3a}};
}

StateVector cnot_pointer(const StateVector& state_ab) {
  if (state_ab.dim() != 4) throw std::invalid_argument("cnot_pointer: expected a 4-dim state");
  Vector pointer = Vector::Zero(2);
  pointer(0) = 1.0;
  StateVector abc = tensor(StateVector(state_ab.amplitudes(), {2, 2}), StateVector(pointer));
  const Matrix gate = lift_local(cnot_matrix(), 1, {2, 4});
  return StateVector(gate * abc.amplitudes(), {2, 2, 2});
}

CollapseReport collapse_analysis(double r, double zeta, double tol) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw std::invalid_argument(
        "collapse_analysis: r must be in [0,1); at r = 1 the state coincides with the "
        "collapse target");
  }
  const Unitary uq = schmidt_prep_unitary(r, zeta);
  const Matrix uq_inv = uq.matrix().adjoint();

  CollapseReport report;
  const Vector psi = uq.matrix().col(0);
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  report.inverse_maps_to_reference = (uq_inv * psi - e0).cwiseAbs().maxCoeff();

  report.uq_inverse_schmidt_values = operator_schmidt_values(uq_inv, 2, 2);
  report.uq_inverse_operator_rank =
      static_cast<int>((report.uq_inverse_schmidt_values.array() > tol).count());

  // Schmidt rank of the state itself across A|B (the 2x2 amplitude matrix).
  Eigen::JacobiSVD<Matrix> svd(psi.reshaped(2, 2).transpose());
  report.state_schmidt_rank = static_cast<int>((svd.singularValues().array() > tol).count());

  report.cnot_rank_bc = operator_schmidt_rank(cnot_matrix(), 2, 2, tol);
  report.lifted_cnot_rank_a_bc =
      operator_schmidt_rank(lift_local(cnot_matrix(), 1, {2, 4}), 2, 4, tol);
  return report;
}

}  // namespace qv

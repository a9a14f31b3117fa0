#include "qv/ncvalue.hpp"

namespace qv {

namespace {

void check_dims(const Matrix& b, const StateVector& phi, const char* what) {
  if (b.rows() != b.cols() || b.rows() != phi.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

Complex expectation_fn(const Matrix& b, const StateVector& phi) {
  check_dims(b, phi, "expectation_fn");
  const Vector& z = phi.amplitudes();
  return z.dot(b * z);  // Eigen dot conjugates its first argument
}

Vector v_components(const Matrix& b, const StateVector& phi) {
  check_dims(b, phi, "v_components");
  const Vector zbar = phi.amplitudes().conjugate();
  const Complex f = expectation_fn(b, phi);
  return b.transpose() * zbar - f * zbar;
}

NCValue nc_value(const Matrix& b, const StateVector& phi) {
  return NCValue{expectation_fn(b, phi), v_components(b, phi)};
}

NCValue nc_value(const Observable& b, const StateVector& phi) {
  return nc_value(b.matrix(), phi);
}

Complex star_scalar(const NCValue& a, const NCValue& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("star_scalar: dimension mismatch");
  return a.f * b.f + b.v.dot(a.v);  // sum_n V_a_n conj(V_b_n)
}

NCValue nc_value_of_product(const Matrix& b, const Matrix& c, const StateVector& phi) {
  check_dims(b, phi, "nc_value_of_product");
  check_dims(c, phi, "nc_value_of_product");
  return nc_value(Matrix(b * c), phi);
}

double uncertainty(const NCValue& a) { return a.v.squaredNorm(); }

NCValue transport_under_local_process(const NCValue& a, const Matrix& b, const Unitary& w,
                                      const StateVector& phi, double tol) {
  check_dims(b, phi, "transport_under_local_process");
  if (a.dim() != phi.dim() || w.dim() != phi.dim()) {
    throw std::invalid_argument("transport_under_local_process: dimension mismatch");
  }
  const Matrix& wm = w.matrix();
  const double comm = max_abs_diff(Matrix(wm * b), Matrix(b * wm));
  if (comm > tol) {
    throw std::invalid_argument(
        "transport_under_local_process: [W, B] != 0, the process is not local to the "
        "complement of the observable's support (commutator norm " + std::to_string(comm) + ")");
  }
  return nc_value(b, StateVector(wm * phi.amplitudes(), phi.factor_dims()));
}

}  // namespace qv

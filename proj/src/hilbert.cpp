#include "qv/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

namespace qv {

namespace detail {

Index checked_product(const std::vector<Index>& dims) {
  Index prod = 1;
  for (Index d : dims) {
    if (d <= 0) throw std::invalid_argument("factor dimensions must be positive");
    prod *= d;
  }
  return prod;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer; decorrelates derived per-trial seeds.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : eng_(seed) {}

double Rng::uniform() {
  // 53-bit mantissa from the raw engine word.
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Complex Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

}  // namespace detail

namespace {

void check_factor_dims(Index dim, const std::vector<Index>& dims, const char* what) {
  if (!dims.empty() && detail::checked_product(dims) != dim) {
    throw std::invalid_argument(std::string(what) + ": factor_dims do not multiply to dim");
  }
}

// Splits a composite index into (value at `slot`, flattened index over the
// remaining slots in ascending order).
std::pair<Index, Index> split_index(Index global, int slot, const std::vector<Index>& dims) {
  Index slot_value = 0;
  Index rest = 0;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    Index stride = 1;
    for (int j = k + 1; j < static_cast<int>(dims.size()); ++j) stride *= dims[j];
    const Index digit = (global / stride) % dims[k];
    if (k == slot) {
      slot_value = digit;
    } else {
      rest = rest * dims[k] + digit;
    }
  }
  return {slot_value, rest};
}

}  // namespace

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double diff_up_to_global_phase(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  Index pivot = 0;
  a.cwiseAbs().maxCoeff(&pivot);
  if (std::abs(a(pivot)) < 1e-300 || std::abs(b(pivot)) < 1e-300) {
    return max_abs_diff(a, b);
  }
  const Complex phase = (a(pivot) / b(pivot)) / std::abs(a(pivot) / b(pivot));
  return max_abs_diff(a, Vector(phase * b));
}

StateVector::StateVector(Vector amplitudes, std::vector<Index> factor_dims)
    : amps_(std::move(amplitudes)), factor_dims_(std::move(factor_dims)) {
  if (amps_.size() == 0) throw std::invalid_argument("StateVector: empty amplitude list");
  check_factor_dims(amps_.size(), factor_dims_, "StateVector");
  const double norm = amps_.norm();
  if (norm < 1e-150) throw std::invalid_argument("StateVector: zero vector is not normalizable");
  amps_ /= norm;
}

Observable::Observable(Matrix m, std::vector<Index> factor_dims)
    : m_(std::move(m)), factor_dims_(std::move(factor_dims)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("Observable: matrix must be square and non-empty");
  }
  check_factor_dims(m_.rows(), factor_dims_, "Observable");
  const double dev = max_abs_diff(m_, m_.adjoint());
  if (dev > kHermitianTol) {
    throw std::invalid_argument("Observable: matrix is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
}

Unitary::Unitary(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("Unitary: matrix must be square and non-empty");
  }
  const Matrix gram = m_.adjoint() * m_;
  const double dev = max_abs_diff(gram, Matrix::Identity(m_.rows(), m_.cols()));
  if (dev > kUnitaryTol) {
    throw std::invalid_argument("Unitary: U^dag U deviates from identity by " +
                                std::to_string(dev));
  }
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector out(a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  std::vector<Index> dims = a.factor_dims().empty() ? std::vector<Index>{a.dim()}
                                                    : a.factor_dims();
  if (b.factor_dims().empty()) {
    dims.push_back(b.dim());
  } else {
    dims.insert(dims.end(), b.factor_dims().begin(), b.factor_dims().end());
  }
  return StateVector(std::move(out), std::move(dims));
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

Matrix lift_local(const Matrix& op, int slot, const std::vector<Index>& factor_dims) {
  if (slot < 0 || slot >= static_cast<int>(factor_dims.size())) {
    throw std::invalid_argument("lift_local: slot out of range");
  }
  if (op.rows() != op.cols() || op.rows() != factor_dims[slot]) {
    throw std::invalid_argument("lift_local: operator dim does not match the slot");
  }
  const Index total = detail::checked_product(factor_dims);
  Matrix out = Matrix::Zero(total, total);
  for (Index row = 0; row < total; ++row) {
    const auto [s_row, rest_row] = split_index(row, slot, factor_dims);
    for (Index col = 0; col < total; ++col) {
      const auto [s_col, rest_col] = split_index(col, slot, factor_dims);
      if (rest_row == rest_col) out(row, col) = op(s_row, s_col);
    }
  }
  return out;
}

Matrix lift_complement(const Matrix& op, int slot, const std::vector<Index>& factor_dims) {
  if (slot < 0 || slot >= static_cast<int>(factor_dims.size())) {
    throw std::invalid_argument("lift_complement: slot out of range");
  }
  const Index total = detail::checked_product(factor_dims);
  const Index rest_dim = total / factor_dims[slot];
  if (op.rows() != op.cols() || op.rows() != rest_dim) {
    throw std::invalid_argument("lift_complement: operator dim does not match the complement");
  }
  Matrix out = Matrix::Zero(total, total);
  for (Index row = 0; row < total; ++row) {
    const auto [s_row, rest_row] = split_index(row, slot, factor_dims);
    for (Index col = 0; col < total; ++col) {
      const auto [s_col, rest_col] = split_index(col, slot, factor_dims);
      if (s_row == s_col) out(row, col) = op(rest_row, rest_col);
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& rho, int keep_slot, const std::vector<Index>& factor_dims) {
  if (keep_slot < 0 || keep_slot >= static_cast<int>(factor_dims.size())) {
    throw std::invalid_argument("partial_trace: slot out of range");
  }
  const Index total = detail::checked_product(factor_dims);
  if (rho.rows() != total || rho.cols() != total) {
    throw std::invalid_argument("partial_trace: matrix shape does not match factor_dims");
  }
  const Index d_keep = factor_dims[keep_slot];
  const Index d_rest = total / d_keep;

  // Global index from (kept value, flattened complement index).
  std::vector<Index> rest_dims;
  for (int k = 0; k < static_cast<int>(factor_dims.size()); ++k) {
    if (k != keep_slot) rest_dims.push_back(factor_dims[k]);
  }
  auto fuse = [&](Index kept, Index rest) {
    Index global = 0;
    int rest_pos = 0;
    for (int k = 0; k < static_cast<int>(factor_dims.size()); ++k) {
      Index digit;
      if (k == keep_slot) {
        digit = kept;
      } else {
        Index stride = 1;
        for (int j = rest_pos + 1; j < static_cast<int>(rest_dims.size()); ++j) {
          stride *= rest_dims[j];
        }
        digit = (rest / stride) % rest_dims[rest_pos];
        ++rest_pos;
      }
      global = global * factor_dims[k] + digit;
    }
    return global;
  };

  Matrix out = Matrix::Zero(d_keep, d_keep);
  for (Index a = 0; a < d_keep; ++a) {
    for (Index b = 0; b < d_keep; ++b) {
      Complex sum = 0.0;
      for (Index t = 0; t < d_rest; ++t) sum += rho(fuse(a, t), fuse(b, t));
      out(a, b) = sum;
    }
  }
  return out;
}

Matrix density_matrix(const StateVector& phi) {
  return phi.amplitudes() * phi.amplitudes().adjoint();
}

Eigen::VectorXd operator_schmidt_values(const Matrix& u, Index dim_a, Index dim_b) {
  if (u.rows() != u.cols() || u.rows() != dim_a * dim_b) {
    throw std::invalid_argument("operator_schmidt_values: shape does not match the cut");
  }
  Matrix reshuffled(dim_a * dim_a, dim_b * dim_b);
  for (Index a = 0; a < dim_a; ++a) {
    for (Index ap = 0; ap < dim_a; ++ap) {
      for (Index b = 0; b < dim_b; ++b) {
        for (Index bp = 0; bp < dim_b; ++bp) {
          reshuffled(a * dim_a + ap, b * dim_b + bp) = u(a * dim_b + b, ap * dim_b + bp);
        }
      }
    }
  }
  Eigen::JacobiSVD<Matrix> svd(reshuffled);
  return svd.singularValues();
}

int operator_schmidt_rank(const Matrix& u, Index dim_a, Index dim_b, double tol) {
  const Eigen::VectorXd sv = operator_schmidt_values(u, dim_a, dim_b);
  return static_cast<int>((sv.array() > tol).count());
}

StateVector random_state(Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_state: dim must be positive");
  detail::Rng rng(detail::mix_seed(seed, 0x5741));
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = rng.cgaussian();
  return StateVector(std::move(v));
}

Unitary random_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
  detail::Rng rng(detail::mix_seed(seed, 0x7541));
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase fix: make the R diagonal real positive so Q is unique (and Haar).
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return Unitary(std::move(q));
}

Observable random_hermitian(Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_hermitian: dim must be positive");
  detail::Rng rng(detail::mix_seed(seed, 0x4845));
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
  }
  return Observable(0.5 * (g + g.adjoint()));
}

}  // namespace qv

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Dense complex linear algebra over tensor-product Hilbert spaces: states,
// Hermitian observables, unitaries, tensor lifting, partial trace, operator
// Schmidt decomposition and seeded random generation.
//
// Conventions, fixed repo-wide:
//   * lexicographic tensor order: index = i * dim_b + j for a two-factor
//     space, so a two-qubit basis reads |00>, |01>, |10>, |11>;
//   * comparison metric is the max-abs entrywise difference.

namespace qv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kStateTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kDefaultTol = 1e-10;

double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

/// Max-abs difference between a and e^{i alpha} b, with alpha chosen from the
/// largest-magnitude entry of a. Comparisons "up to a global phase" are always
/// explicit through this helper, never applied silently.
double diff_up_to_global_phase(const Vector& a, const Vector& b);

/// Normalized state vector over the fixed orthonormal basis, optionally
/// carrying the tensor factorization of its space. Amplitudes are scaled to
/// unit norm at construction; zero input is rejected.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes, std::vector<Index> factor_dims = {});

  Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](Index n) const { return amps_(n); }
  const std::vector<Index>& factor_dims() const { return factor_dims_; }

 private:
  Vector amps_;
  std::vector<Index> factor_dims_;
};

/// Hermitian matrix of elements <m|B|n>. Non-Hermitian input (beyond 1e-12)
/// is rejected rather than symmetrized, so caller bugs stay visible. Products
/// of observables are plain Matrix, not Observable.
class Observable {
 public:
  explicit Observable(Matrix m, std::vector<Index> factor_dims = {});

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const std::vector<Index>& factor_dims() const { return factor_dims_; }

 private:
  Matrix m_;
  std::vector<Index> factor_dims_;
};

/// Unitary matrix; U^dag U = I is enforced within 1e-10 at construction.
class Unitary {
 public:
  explicit Unitary(Matrix m);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Kronecker products with the lexicographic index convention. factor_dims of
// the operands are concatenated (an operand without factor metadata counts as
// a single factor).
StateVector tensor(const StateVector& a, const StateVector& b);
Matrix tensor(const Matrix& a, const Matrix& b);

/// Embeds a square operator acting on factor `slot` as I x ... x op x ... x I.
Matrix lift_local(const Matrix& op, int slot, const std::vector<Index>& factor_dims);

/// Embeds an operator acting on every factor except `slot` (complement taken
/// in ascending slot order), leaving `slot` untouched.
Matrix lift_complement(const Matrix& op, int slot, const std::vector<Index>& factor_dims);

/// Reduced density matrix on the kept slot; preserves the trace.
Matrix partial_trace(const Matrix& rho, int keep_slot, const std::vector<Index>& factor_dims);

Matrix density_matrix(const StateVector& phi);

/// Singular values of the reshuffled operator M[(a,a'),(b,b')] = U[(ab),(a'b')].
/// Their number above a threshold is the operator Schmidt rank across the
/// dim_a | dim_b cut; rank 1 iff U = A x B.
Eigen::VectorXd operator_schmidt_values(const Matrix& u, Index dim_a, Index dim_b);
int operator_schmidt_rank(const Matrix& u, Index dim_a, Index dim_b,
                          double tol = kDefaultTol);

// Seeded random generation. Deterministic across platforms: uniform deviates
// come straight from mt19937_64 bits and normal deviates from Box-Muller, so
// no implementation-defined distribution is involved. Unitaries are the Q
// factor of a complex Gaussian matrix with the R diagonal made real positive.
StateVector random_state(Index dim, std::uint64_t seed);
Unitary random_unitary(Index dim, std::uint64_t seed);
Observable random_hermitian(Index dim, std::uint64_t seed);

namespace detail {

/// Deterministic scalar source backing the seeded sampling. mt19937_64 is
/// bit-exact by the standard; std::normal_distribution is not, hence the
/// hand-rolled Box-Muller on top of raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();    // [0, 1)
  double gaussian();   // N(0, 1)
  Complex cgaussian(); // independent N(0, 1) real and imaginary parts

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Index checked_product(const std::vector<Index>& dims);

}  // namespace detail

}  // namespace qv

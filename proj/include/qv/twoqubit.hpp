#pragma once

#include <map>

#include "qv/dhvalue.hpp"
#include "qv/ncvalue.hpp"

// The six-parameter two-qubit state family, its preparation unitaries, the
// closed-form Deutsch-Hayden / noncommutative values of the local basic
// observables on the Schmidt-diagonal slice, and the CNOT-pointer / collapse
// nonlocality analysis.

namespace qv {

/// {r, zeta, theta_A, theta_B, psi_A, psi_B}: r in [0,1] sets the Schmidt
/// weights q+- = sqrt((1 +- r)/2) (entanglement sqrt(1-r^2)), zeta the
/// relative Schmidt phase, the angle pairs the local qubit frames.
struct TwoQubitParams {
  double r = 1.0;
  double zeta = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double psi_a = 0.0;
  double psi_b = 0.0;

  void validate() const;  // throws std::invalid_argument on range violation
};

/// The parametrized state z_00|00> + z_01|01> + z_10|10> + z_11|11>.
StateVector state_from_params(const TwoQubitParams& p);

/// sqrt(1 - r^2), in [0, 1].
double entanglement(const TwoQubitParams& p);

/// The 4x4 unitary rotating in the {|00>,|11>} plane whose first column is
/// the Schmidt-form state psi(r, zeta); identity on |01>, |10>.
Unitary schmidt_prep_unitary(double r, double zeta);

/// (U_A x U_B) times the Schmidt rotation: first column equals
/// state_from_params(p). The residual completion freedom on the orthogonal
/// complement is fixed to the identity.
Unitary prep_unitary(const TwoQubitParams& p);

/// Closed-form Deutsch-Hayden values of the lifted sigma_1/sigma_3 of both
/// qubits at psi(r, zeta), keyed "sigma1A", "sigma1B", "sigma3A", "sigma3B".
/// Each equals dh_value(lifted Pauli, schmidt_prep_unitary(r, zeta)) to
/// machine precision. sigma3A and sigma3B share the corner block
/// (r, -sqrt(1-r^2); -sqrt(1-r^2), -r) but differ by sign in the middle block.
std::map<std::string, Matrix> closed_form_dh(double r, double zeta);

/// Closed-form noncommutative values of the same observables at psi(r, zeta);
/// sigma3A and sigma3B coincide exactly as tuples.
std::map<std::string, NCValue> closed_form_nc(double r, double zeta);

/// Appends a fresh pointer qubit C in |0> and applies CNOT with B as control
/// and C as target; index convention |abc> -> 4a + 2b + c.
StateVector cnot_pointer(const StateVector& state_ab);

struct CollapseReport {
  double inverse_maps_to_reference = 0.0;  // max-abs(U_q^-1 psi - e_0)
  Eigen::VectorXd uq_inverse_schmidt_values;
  int uq_inverse_operator_rank = 0;  // across A|B
  int state_schmidt_rank = 0;        // of psi(r, zeta) across A|B
  int cnot_rank_bc = 0;              // 4x4 CNOT across B|C
  int lifted_cnot_rank_a_bc = 0;     // I_2 x CNOT across A|(BC)
};

/// Quantifies why the collapse psi -> |00> cannot be a process local to one
/// qubit: the only in-system unitary doing it is the inverse preparation,
/// whose operator Schmidt rank across A|B exceeds 1 for r < 1; likewise the
/// pointer CNOT is nonlocal across its control|target cut. r = 1 is rejected
/// (the state already is the collapse target).
CollapseReport collapse_analysis(double r, double zeta, double tol = kDefaultTol);

}  // namespace qv

#pragma once

#include <optional>
#include <utility>

#include "qv/hilbert.hpp"

// Deutsch-Hayden matrix values: given a unitary completion U carrying the
// reference basis vector to the state phi, every observable B gets the matrix
// value U^dag B U. For a fixed completion the map is a *-homomorphism; the
// state fixes only the completion's reference column, and all state-intrinsic
// content (e.g. the (ref,ref) entry, which equals <phi|B|phi>) is independent
// of the residual completion freedom.

namespace qv {

struct UnitaryCompletion {
  Unitary u;
  Index reference_index = 0;
  std::string id;  // opaque tag propagated into the values computed from it

  /// The state this completion encodes: column `reference_index` of u.
  StateVector state() const;
};

struct DHMatrixValue {
  Matrix m;
  std::string completion_id;
};

/// Wraps an explicitly constructed unitary (e.g. a state-preparation circuit)
/// as a completion of its reference column.
UnitaryCompletion completion_from_unitary(Unitary u, std::string id, Index reference_index = 0);

/// Deterministic completion of phi: column `reference_index` is phi exactly;
/// the remaining columns come from Gram-Schmidt over the standard basis with
/// the basis vector most parallel to phi dropped (smallest index on ties).
/// With a seed, the orthogonal complement is further mixed by a seeded random
/// unitary, exercising the residual freedom U' = U (1 (+) U_perp).
UnitaryCompletion complete_unitary(const StateVector& phi,
                                   std::optional<std::uint64_t> seed = std::nullopt,
                                   Index reference_index = 0);

DHMatrixValue dh_value(const Matrix& b, const UnitaryCompletion& comp);
DHMatrixValue dh_value(const Observable& b, const UnitaryCompletion& comp);

/// Descriptor of one qubit: the pair of values of its lifted sigma_1 and
/// sigma_3 basic observables.
std::pair<DHMatrixValue, DHMatrixValue> dh_descriptor(int qubit_slot,
                                                      const UnitaryCompletion& comp,
                                                      const std::vector<Index>& factor_dims);

/// max-abs || [BC] - [B][C] ||; zero up to roundoff for any completion.
double verify_dh_homomorphism(const Matrix& b, const Matrix& c, const UnitaryCompletion& comp);

/// max-abs difference between the values of W^dag B~ W and of B~, where
/// B~ lifts b_local into `slot` and W lifts u_other into the complement.
/// The identity is exact operator algebra, so the residual is pure roundoff.
double verify_strong_locality(const Matrix& b_local, int slot, const Unitary& u_other,
                              const UnitaryCompletion& comp,
                              const std::vector<Index>& factor_dims);

struct CompletionPairCheck {
  std::string id_a;
  std::string id_b;
  double entry_ref_diff = 0.0;      // |(ref,ref)_a - (ref,ref)_b|
  double conjugation_residual = 0.0; // ||[B]_b - T^dag [B]_a T||, T = U_a^dag U_b
  double reference_fix_residual = 0.0; // ||T e_ref - e_ref||
};

struct CompletionIndependenceReport {
  std::vector<std::string> completion_ids;
  std::vector<Complex> entry_ref;            // (ref,ref) entry per completion
  std::vector<double> homomorphism_residuals; // ||[B^2] - [B][B]|| per completion
  std::vector<CompletionPairCheck> pairs;

  double max_entry_diff() const;
  double max_conjugation_residual() const;
  double max_homomorphism_residual() const;
};

/// Builds one seeded completion per seed and cross-checks that the resulting
/// values agree in everything the state determines.
CompletionIndependenceReport completion_independence_report(
    const Matrix& b, const StateVector& phi, const std::vector<std::uint64_t>& seeds);

}  // namespace qv

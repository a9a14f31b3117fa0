#include "qv/dhvalue.hpp"

#include <algorithm>
#include <cmath>

namespace qv {

namespace {

Matrix pauli1() {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Matrix pauli3() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace

StateVector UnitaryCompletion::state() const {
  return StateVector(u.matrix().col(reference_index));
}

UnitaryCompletion completion_from_unitary(Unitary u, std::string id, Index reference_index) {
  if (reference_index < 0 || reference_index >= u.dim()) {
    throw std::invalid_argument("completion_from_unitary: reference index out of range");
  }
  return UnitaryCompletion{std::move(u), reference_index, std::move(id)};
}

UnitaryCompletion complete_unitary(const StateVector& phi, std::optional<std::uint64_t> seed,
                                   Index reference_index) {
  const Index dim = phi.dim();
  if (reference_index < 0 || reference_index >= dim) {
    throw std::invalid_argument("complete_unitary: reference index out of range");
  }

  // Drop the basis vector most parallel to phi, then orthonormalize the rest
  // against phi in ascending basis order. Two Gram-Schmidt passes keep the
  // result orthonormal to machine precision.
  Index skip = 0;
  phi.amplitudes().cwiseAbs().maxCoeff(&skip);

  std::vector<Vector> columns;
  columns.reserve(dim);
  columns.push_back(phi.amplitudes());
  for (Index k = 0; k < dim && static_cast<Index>(columns.size()) < dim; ++k) {
    if (k == skip) continue;
    Vector cand = Vector::Zero(dim);
    cand(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& prev : columns) cand -= prev.dot(cand) * prev;
    }
    const double norm = cand.norm();
    if (norm < 1e-8) continue;  // candidate already spanned
    columns.push_back(cand / norm);
  }
  if (static_cast<Index>(columns.size()) != dim) {
    throw std::runtime_error("complete_unitary: orthonormalization failed");
  }

  Matrix u(dim, dim);
  u.col(reference_index) = columns[0];
  Index pos = 0;
  for (Index c = 0; c < dim; ++c) {
    if (c == reference_index) continue;
    u.col(c) = columns[++pos];
  }

  std::string id = "gs";
  if (seed) {
    // Mix the orthogonal complement by a seeded unitary; the reference column
    // is untouched, exercising exactly the U_{-1} freedom.
    const Unitary mix = random_unitary(dim - 1, *seed);
    Matrix block = Matrix::Identity(dim, dim);
    std::vector<Index> rest;
    for (Index c = 0; c < dim; ++c) {
      if (c != reference_index) rest.push_back(c);
    }
    for (Index i = 0; i < dim - 1; ++i) {
      for (Index j = 0; j < dim - 1; ++j) block(rest[i], rest[j]) = mix.matrix()(i, j);
    }
    u = u * block;
    id = "gs#" + std::to_string(*seed);
  }
  return UnitaryCompletion{Unitary(std::move(u)), reference_index, std::move(id)};
}

DHMatrixValue dh_value(const Matrix& b, const UnitaryCompletion& comp) {
  if (b.rows() != b.cols() || b.rows() != comp.u.dim()) {
    throw std::invalid_argument("dh_value: dimension mismatch");
  }
  const Matrix& u = comp.u.matrix();
  return DHMatrixValue{u.adjoint() * b * u, comp.id};
}

DHMatrixValue dh_value(const Observable& b, const UnitaryCompletion& comp) {
  return dh_value(b.matrix(), comp);
}

std::pair<DHMatrixValue, DHMatrixValue> dh_descriptor(int qubit_slot,
                                                      const UnitaryCompletion& comp,
                                                      const std::vector<Index>& factor_dims) {
  if (qubit_slot < 0 || qubit_slot >= static_cast<int>(factor_dims.size()) ||
      factor_dims[qubit_slot] != 2) {
    throw std::invalid_argument("dh_descriptor: slot must address a qubit factor");
  }
  if (detail::checked_product(factor_dims) != comp.u.dim()) {
    throw std::invalid_argument("dh_descriptor: factor_dims do not match the completion");
  }
  return {dh_value(lift_local(pauli1(), qubit_slot, factor_dims), comp),
          dh_value(lift_local(pauli3(), qubit_slot, factor_dims), comp)};
}

double verify_dh_homomorphism(const Matrix& b, const Matrix& c, const UnitaryCompletion& comp) {
  const Matrix product_value = dh_value(Matrix(b * c), comp).m;
  const Matrix value_product = dh_value(b, comp).m * dh_value(c, comp).m;
  return max_abs_diff(product_value, value_product);
}

double verify_strong_locality(const Matrix& b_local, int slot, const Unitary& u_other,
                              const UnitaryCompletion& comp,
                              const std::vector<Index>& factor_dims) {
  const Matrix lifted = lift_local(b_local, slot, factor_dims);
  const Matrix w = lift_complement(u_other.matrix(), slot, factor_dims);
  const Matrix transformed = w.adjoint() * lifted * w;
  return max_abs_diff(dh_value(transformed, comp).m, dh_value(lifted, comp).m);
}

double CompletionIndependenceReport::max_entry_diff() const {
  double out = 0.0;
  for (const auto& p : pairs) out = std::max(out, p.entry_ref_diff);
  return out;
}

double CompletionIndependenceReport::max_conjugation_residual() const {
  double out = 0.0;
  for (const auto& p : pairs) {
    out = std::max(out, std::max(p.conjugation_residual, p.reference_fix_residual));
  }
  return out;
}

double CompletionIndependenceReport::max_homomorphism_residual() const {
  double out = 0.0;
  for (double r : homomorphism_residuals) out = std::max(out, r);
  return out;
}

CompletionIndependenceReport completion_independence_report(
    const Matrix& b, const StateVector& phi, const std::vector<std::uint64_t>& seeds) {
  if (seeds.size() < 2) {
    throw std::invalid_argument("completion_independence_report: need at least two seeds");
  }
  CompletionIndependenceReport report;
  std::vector<UnitaryCompletion> comps;
  std::vector<Matrix> values;
  for (const auto seed : seeds) {
    comps.push_back(complete_unitary(phi, seed));
    values.push_back(dh_value(b, comps.back()).m);
    report.completion_ids.push_back(comps.back().id);
    report.entry_ref.push_back(values.back()(comps.back().reference_index,
                                             comps.back().reference_index));
    report.homomorphism_residuals.push_back(verify_dh_homomorphism(b, b, comps.back()));
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      CompletionPairCheck check;
      check.id_a = comps[i].id;
      check.id_b = comps[j].id;
      check.entry_ref_diff = std::abs(report.entry_ref[i] - report.entry_ref[j]);
      // T = U_i^dag U_j fixes the reference basis vector exactly, and the two
      // values are conjugate by it.
      const Matrix t = comps[i].u.matrix().adjoint() * comps[j].u.matrix();
      Vector e_ref = Vector::Zero(phi.dim());
      e_ref(comps[i].reference_index) = 1.0;
      check.reference_fix_residual = (t * e_ref - e_ref).cwiseAbs().maxCoeff();
      check.conjugation_residual = max_abs_diff(values[j], Matrix(t.adjoint() * values[i] * t));
      report.pairs.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace qv

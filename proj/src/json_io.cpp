#include "qv/json_io.hpp"

namespace qv {

using nlohmann::json;

void to_json(json& j, const Complex& z) { j = json::array({z.real(), z.imag()}); }

void to_json(json& j, const Vector& v) {
  j = json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(json(v(i)));
}

void to_json(json& j, const Matrix& m) {
  j = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(json(m(r, c)));
    j.push_back(std::move(row));
  }
}

void to_json(json& j, const StateVector& s) { to_json(j, s.amplitudes()); }

void to_json(json& j, const NCValue& v) { j = json{{"f", v.f}, {"v", v.v}}; }

void to_json(json& j, const DHMatrixValue& v) {
  j = json{{"matrix", v.m}, {"completion_id", v.completion_id}};
}

void to_json(json& j, const CompletionIndependenceReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(json{{"id_a", p.id_a},
                         {"id_b", p.id_b},
                         {"entry_ref_diff", p.entry_ref_diff},
                         {"conjugation_residual", p.conjugation_residual},
                         {"reference_fix_residual", p.reference_fix_residual}});
  }
  j = json{{"completion_ids", r.completion_ids},
           {"entry_ref", r.entry_ref},
           {"homomorphism_residuals", r.homomorphism_residuals},
           {"pairs", std::move(pairs)}};
}

void to_json(json& j, const CollapseReport& r) {
  json sv = json::array();
  for (Index i = 0; i < r.uq_inverse_schmidt_values.size(); ++i) {
    sv.push_back(r.uq_inverse_schmidt_values(i));
  }
  j = json{{"inverse_maps_to_reference", r.inverse_maps_to_reference},
           {"uq_inverse_schmidt_values", std::move(sv)},
           {"uq_inverse_operator_rank", r.uq_inverse_operator_rank},
           {"state_schmidt_rank", r.state_schmidt_rank},
           {"cnot_rank_bc", r.cnot_rank_bc},
           {"lifted_cnot_rank_a_bc", r.lifted_cnot_rank_a_bc}};
}

void to_json(json& j, const EprIdentityReport& r) {
  j = json{{"residuals", r.residuals},
           {"expectations", r.expectations},
           {"v_p_norm", r.v_p_norm},
           {"v_r_norm_sq", r.v_r_norm_sq},
           {"expected_v_r_sq", r.expected_v_r_sq},
           {"particle_schmidt_count", r.particle_schmidt_count},
           {"rotated_rank", r.rotated_rank},
           {"rotation_checked", r.rotation_checked}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nested array");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qv

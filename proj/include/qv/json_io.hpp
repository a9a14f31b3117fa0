#pragma once

#include <nlohmann/json.hpp>

#include "qv/continuum.hpp"
#include "qv/dhvalue.hpp"
#include "qv/ncvalue.hpp"
#include "qv/twoqubit.hpp"

// JSON encoding used repo-wide: a complex number is the two-element array
// [re, im], a matrix is row-major nested arrays, a state is an array of
// complex. nlohmann keeps object keys sorted and serializes doubles with the
// shortest round-trip representation, so equal data always produces
// byte-identical text.

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) {
    j = json::array({z.real(), z.imag()});
  }
  static void from_json(const json& j, std::complex<double>& z) {
    z = {j.at(0).get<double>(), j.at(1).get<double>()};
  }
};

template <>
struct adl_serializer<Eigen::MatrixXcd> {
  static void to_json(json& j, const Eigen::MatrixXcd& m) {
    j = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      j.push_back(std::move(row));
    }
  }
  static void from_json(const json& j, Eigen::MatrixXcd& m) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    m.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        m(r, c) = j.at(r).at(c).get<std::complex<double>>();
      }
    }
  }
};

template <>
struct adl_serializer<Eigen::VectorXcd> {
  static void to_json(json& j, const Eigen::VectorXcd& v) {
    j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  }
  static void from_json(const json& j, Eigen::VectorXcd& v) {
    v.resize(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v(i) = j.at(i).get<std::complex<double>>();
    }
  }
};

}  // namespace nlohmann

namespace qv {

void to_json(nlohmann::json& j, const StateVector& s);
void to_json(nlohmann::json& j, const NCValue& v);       // { "f": .., "v": [..] }
void to_json(nlohmann::json& j, const DHMatrixValue& v); // { "matrix": .., "completion_id": .. }
void to_json(nlohmann::json& j, const CompletionIndependenceReport& r);
void to_json(nlohmann::json& j, const CollapseReport& r);
void to_json(nlohmann::json& j, const EprIdentityReport& r);

/// Fixed-layout dump used for files and reports: 2-space indent plus trailing
/// newline.
std::string dump_report(const nlohmann::json& j);

}  // namespace qv

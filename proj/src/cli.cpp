#include "qv/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qv/json_io.hpp"

namespace qv::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Matrix pauli(int which) {
  Matrix s(2, 2);
  if (which == 1) {
    s << 0, 1, 1, 0;
  } else {
    s << 1, 0, 0, -1;
  }
  return s;
}

// The four local basic observables of a two-qubit system, lifted.
std::vector<std::pair<std::string, Matrix>> basic_observables() {
  return {{"sigma1A", lift_local(pauli(1), 0, {2, 2})},
          {"sigma1B", lift_local(pauli(1), 1, {2, 2})},
          {"sigma3A", lift_local(pauli(3), 0, {2, 2})},
          {"sigma3B", lift_local(pauli(3), 1, {2, 2})}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v + 0.0);
  return buf;
}

std::string render_matrix_table(const Matrix& m) {
  std::ostringstream out;
  for (Index r = 0; r < m.rows(); ++r) {
    out << "   ";
    for (Index c = 0; c < m.cols(); ++c) {
      out << " " << format_complex(m(r, c).real(), m(r, c).imag());
    }
    out << "\n";
  }
  return out.str();
}

std::string render_nc_table(const NCValue& v) {
  std::ostringstream out;
  out << "    f = " << format_complex(v.f.real(), v.f.imag()) << ", v = (";
  for (Index i = 0; i < v.v.size(); ++i) {
    out << (i ? ", " : "") << format_complex(v.v(i).real(), v.v(i).imag());
  }
  out << ")\n";
  return out.str();
}

struct ResidualTable {
  json residuals = json::object();
  json thresholds = json::object();
  std::vector<std::string> failures;

  void add(const std::string& name, double value, double threshold) {
    residuals[name] = value;
    thresholds[name] = threshold;
    if (!(value <= threshold)) failures.push_back(name);
  }
};

RunResult finish(const RunConfig& cfg, json params, json results, ResidualTable table) {
  RunResult rr;
  rr.failures = table.failures;
  results["thresholds"] = std::move(table.thresholds);
  if (!rr.failures.empty()) results["failures"] = rr.failures;
  const bool pass = rr.failures.empty();
  rr.report = json{{"command", cfg.command},
                   {"params", std::move(params)},
                   {"results", std::move(results)},
                   {"residuals", std::move(table.residuals)},
                   {"pass", pass}};
  rr.exit_code = pass ? 0 : 1;
  if (cfg.output == "table") {
    std::ostringstream out;
    out << cfg.command << "\n";
    if (rr.report["results"].contains("rendered_table")) {
      out << rr.report["results"]["rendered_table"].get<std::string>();
      rr.report["results"].erase("rendered_table");
    }
    for (const auto& [name, value] : rr.report["residuals"].items()) {
      out << "  residual " << name << " = " << fmt(value.get<double>())
          << (std::find(rr.failures.begin(), rr.failures.end(), name) != rr.failures.end()
                  ? "  FAIL"
                  : "")
          << "\n";
    }
    out << (pass ? "PASS" : "FAIL") << "\n";
    rr.rendered = out.str();
  } else {
    if (rr.report["results"].contains("rendered_table")) {
      rr.report["results"].erase("rendered_table");
    }
    rr.rendered = dump_report(rr.report);
  }
  return rr;
}

TwoQubitParams params_of(const RunConfig& cfg) {
  TwoQubitParams p;
  p.r = cfg.r;
  p.zeta = cfg.zeta;
  p.theta_a = cfg.theta_a;
  p.theta_b = cfg.theta_b;
  p.psi_a = cfg.psi_a;
  p.psi_b = cfg.psi_b;
  p.validate();
  return p;
}

json angle_params(const RunConfig& cfg) {
  return json{{"r", cfg.r},         {"zeta", cfg.zeta},   {"theta_a", cfg.theta_a},
              {"theta_b", cfg.theta_b}, {"psi_a", cfg.psi_a}, {"psi_b", cfg.psi_b},
              {"tolerance", cfg.tolerance}};
}

RunResult run_nc_value(const RunConfig& cfg) {
  const StateVector phi = state_from_params(params_of(cfg));
  json values = json::object();
  ResidualTable table;
  double ortho_max = 0.0;
  double f_imag_max = 0.0;
  std::ostringstream rendered;
  for (const auto& [name, op] : basic_observables()) {
    const NCValue value = nc_value(op, phi);
    values[name] = value;
    // State-derivative orthogonality: sum_n V_n z_n vanishes for unit states.
    ortho_max = std::max(ortho_max,
                         std::abs((value.v.array() * phi.amplitudes().array()).sum()));
    f_imag_max = std::max(f_imag_max, std::abs(value.f.imag()));
    rendered << "  " << name << "\n" << render_nc_table(value);
  }
  table.add("orthogonality_max", ortho_max, cfg.tolerance);
  table.add("hermitian_f_imag_max", f_imag_max, cfg.tolerance);
  json results{{"values", std::move(values)}, {"state", phi}};
  results["rendered_table"] = rendered.str();
  return finish(cfg, angle_params(cfg), std::move(results), std::move(table));
}

RunResult run_dh_value(const RunConfig& cfg) {
  const TwoQubitParams p = params_of(cfg);
  const StateVector phi = state_from_params(p);
  const UnitaryCompletion comp = completion_from_unitary(
      prep_unitary(p), "prep(r=" + fmt(p.r) + ",zeta=" + fmt(p.zeta) + ")");
  json values = json::object();
  ResidualTable table;
  double entry_max = 0.0;
  std::ostringstream rendered;
  for (const auto& [name, op] : basic_observables()) {
    const DHMatrixValue value = dh_value(op, comp);
    values[name] = value;
    entry_max = std::max(entry_max, std::abs(value.m(0, 0) - expectation_fn(op, phi)));
    rendered << "  " << name << "\n" << render_matrix_table(value.m);
  }
  const auto obs = basic_observables();
  table.add("entry00_vs_expectation_max", entry_max, cfg.tolerance);
  table.add("homomorphism_sigma1A_sigma3A",
            verify_dh_homomorphism(obs[0].second, obs[2].second, comp), cfg.tolerance);
  json results{{"values", std::move(values)}, {"completion_id", comp.id}};
  results["rendered_table"] = rendered.str();
  return finish(cfg, angle_params(cfg), std::move(results), std::move(table));
}

RunResult run_star_check(const RunConfig& cfg) {
  ResidualTable table;
  double dh_max = 0.0, star_max = 0.0, product_f_max = 0.0, uncert_max = 0.0;
  std::uint64_t counter = 0;
  for (const int dim : cfg.dims) {
    if (dim < 1) throw std::invalid_argument("star-check: dims must be positive");
    for (int t = 0; t < cfg.trials; ++t) {
      const auto sub = [&](std::uint64_t salt) {
        return detail::mix_seed(cfg.seed, counter * 8 + salt);
      };
      ++counter;
      const Observable b = random_hermitian(dim, sub(0));
      const Observable c = random_hermitian(dim, sub(1));
      const StateVector phi = random_state(dim, sub(2));

      const NCValue vb = nc_value(b, phi);
      const NCValue vc = nc_value(c, phi);
      const Matrix bc = b.matrix() * c.matrix();
      const Complex direct = expectation_fn(bc, phi);
      star_max = std::max(star_max, std::abs(star_scalar(vb, vc) - direct));
      const NCValue vbc = nc_value_of_product(b.matrix(), c.matrix(), phi);
      product_f_max = std::max(product_f_max, std::abs(vbc.f - star_scalar(vb, vc)));
      uncert_max = std::max(
          uncert_max, std::abs(uncertainty(vb) - (expectation_fn(b.matrix() * b.matrix(), phi) -
                                                  std::norm(vb.f))
                                                     .real()));
      const UnitaryCompletion comp = complete_unitary(phi, sub(3));
      dh_max = std::max(dh_max, verify_dh_homomorphism(b.matrix(), c.matrix(), comp));
    }
  }
  table.add("dh_product_max", dh_max, cfg.tolerance);
  table.add("nc_star_vs_direct_max", star_max, cfg.tolerance);
  table.add("nc_product_f_vs_star_max", product_f_max, cfg.tolerance);
  table.add("uncertainty_identity_max", uncert_max, cfg.tolerance);
  json params{{"dims", cfg.dims}, {"trials", cfg.trials}, {"seed", cfg.seed},
              {"tolerance", cfg.tolerance}};
  return finish(cfg, std::move(params), json::object(), std::move(table));
}

RunResult run_locality_check(const RunConfig& cfg) {
  std::vector<Index> dims(cfg.dims.begin(), cfg.dims.end());
  if (dims.size() < 2) throw std::invalid_argument("locality-check: need at least two factors");
  const Index total = detail::checked_product(dims);

  ResidualTable table;
  double dh_max = 0.0, f_max = 0.0, v_max = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto sub = [&](std::uint64_t salt) {
      return detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(t) * 8 + salt);
    };
    const int slot = t % static_cast<int>(dims.size());
    const Observable b_local = random_hermitian(dims[slot], sub(0));
    const Unitary u_other = random_unitary(total / dims[slot], sub(1));
    const StateVector phi = random_state(total, sub(2));
    const UnitaryCompletion comp = complete_unitary(phi, sub(3));

    dh_max = std::max(dh_max,
                      verify_strong_locality(b_local.matrix(), slot, u_other, comp, dims));

    const Matrix lifted = lift_local(b_local.matrix(), slot, dims);
    const Unitary w(lift_complement(u_other.matrix(), slot, dims));
    const NCValue before = nc_value(lifted, phi);
    const NCValue after = transport_under_local_process(before, lifted, w, phi);
    f_max = std::max(f_max, std::abs(after.f - before.f));
    v_max = std::max(v_max,
                     max_abs_diff(after.v, Vector(w.matrix().conjugate() * before.v)));
  }
  table.add("dh_invariance_max", dh_max, cfg.tolerance);
  table.add("nc_f_invariance_max", f_max, cfg.tolerance);
  table.add("nc_v_transport_max", v_max, cfg.tolerance);
  json params{{"dims", cfg.dims}, {"trials", cfg.trials}, {"seed", cfg.seed},
              {"tolerance", cfg.tolerance}};
  return finish(cfg, std::move(params), json::object(), std::move(table));
}

RunResult run_two_qubit(const RunConfig& cfg) {
  const double r = cfg.r;
  const double zeta = cfg.zeta;
  const auto closed_dh = closed_form_dh(r, zeta);
  const auto closed_nc = closed_form_nc(r, zeta);
  const UnitaryCompletion comp = completion_from_unitary(
      schmidt_prep_unitary(r, zeta), "uq(r=" + fmt(r) + ",zeta=" + fmt(zeta) + ")");
  const StateVector psi = comp.state();

  ResidualTable table;
  double dh_dev = 0.0, nc_dev = 0.0;
  std::ostringstream rendered;
  json dh_json = json::object(), nc_json = json::object();
  for (const auto& [name, op] : basic_observables()) {
    const Matrix engine = dh_value(op, comp).m;
    dh_dev = std::max(dh_dev, max_abs_diff(engine, closed_dh.at(name)));
    dh_json[name] = closed_dh.at(name);
    rendered << "  DH " << name << "\n" << render_matrix_table(closed_dh.at(name));
    const NCValue nc_engine = nc_value(op, psi);
    const NCValue& nc_closed = closed_nc.at(name);
    nc_dev = std::max(nc_dev, std::max(std::abs(nc_engine.f - nc_closed.f),
                                       max_abs_diff(nc_engine.v, nc_closed.v)));
    nc_json[name] = nc_closed;
  }
  // sigma3A and sigma3B share one NC tuple; render the three distinct ones.
  for (const char* name : {"sigma1A", "sigma1B", "sigma3A"}) {
    rendered << "  NC " << name << (std::string(name) == "sigma3A" ? " (= sigma3B)" : "")
             << "\n" << render_nc_table(closed_nc.at(name));
  }

  const Matrix rho = density_matrix(psi);
  const Matrix red_a = partial_trace(rho, 0, {2, 2});
  const Matrix red_b = partial_trace(rho, 1, {2, 2});
  Matrix expected_red(2, 2);
  expected_red << (1.0 + r) / 2.0, 0.0, 0.0, (1.0 - r) / 2.0;
  const double purity = (red_a * red_a).trace().real();

  table.add("dh_engine_vs_closed_max", dh_dev, cfg.tolerance);
  table.add("nc_engine_vs_closed_max", nc_dev, cfg.tolerance);
  table.add("reduced_vs_closed_max",
            std::max(max_abs_diff(red_a, expected_red), max_abs_diff(red_b, expected_red)),
            cfg.tolerance);
  table.add("purity_vs_closed", std::abs(purity - (1.0 + r * r) / 2.0), cfg.tolerance);

  json results{{"dh", std::move(dh_json)},
               {"nc", std::move(nc_json)},
               {"reduced_density_a", red_a},
               {"reduced_density_b", red_b},
               {"purity", purity},
               {"entanglement", std::sqrt(1.0 - r * r)}};
  if (r < 1.0) {
    results["collapse"] = collapse_analysis(r, zeta);
  }
  results["rendered_table"] = rendered.str();
  json params{{"r", r}, {"zeta", zeta}, {"tolerance", cfg.tolerance}};
  return finish(cfg, std::move(params), std::move(results), std::move(table));
}

RunResult run_epr_grid(const RunConfig& cfg) {
  const GridSystem grid(cfg.n, cfg.box);
  // Snap the requested total momentum to the commensurate lattice and echo it.
  const double unit = 2.0 * (2.0 * std::numbers::pi / cfg.box);
  const double p_snapped = std::round(cfg.p / unit) * unit;
  EPRParams epr{p_snapped, cfg.ro, cfg.width};
  epr.validate(grid);

  const EprIdentityReport report = verify_epr_identities(grid, epr);
  ResidualTable table;
  for (const auto& [name, value] : report.residuals) {
    double threshold = cfg.tolerance;
    if (name.rfind("linearity_", 0) == 0) threshold = 1e-12;
    if (name == "v_p_norm") threshold = 1e-8;
    if (name == "v_r_sq_rel_err") threshold = 0.02;
    if (name.find("_vs_") != std::string::npos) threshold = 1e-6;
    if (name == "qbar_abs") threshold = 1e-10;
    table.add(name, value, threshold);
  }
  json params{{"n", cfg.n},          {"box", cfg.box},   {"p", p_snapped},
              {"p_requested", cfg.p}, {"ro", cfg.ro},     {"width", cfg.width},
              {"tolerance", cfg.tolerance}};
  json results;
  to_json(results, report);
  return finish(cfg, std::move(params), std::move(results), std::move(table));
}

RunResult run_fixtures(const RunConfig& cfg) {
  const fs::path dir(cfg.fixtures_dir);
  ResidualTable table;
  json results;
  if (cfg.regen) {
    fs::create_directories(dir);
    json written = json::array();
    for (const auto& [r, zeta] : fixture_grid()) {
      const int quarter = static_cast<int>(std::round(zeta / (std::numbers::pi / 2.0)));
      const std::string name = fixture_file_name(r, quarter);
      std::ofstream out(dir / name, std::ios::binary);
      if (!out) throw std::runtime_error("fixtures: cannot write " + (dir / name).string());
      out << dump_report(two_qubit_fixture(r, zeta));
      written.push_back(name);
    }
    results["written"] = std::move(written);
    table.add("mismatch_count", 0.0, 0.5);
  } else {
    int mismatches = 0;
    json checked = json::array();
    json mismatched = json::array();
    for (const auto& [r, zeta] : fixture_grid()) {
      const int quarter = static_cast<int>(std::round(zeta / (std::numbers::pi / 2.0)));
      const std::string name = fixture_file_name(r, quarter);
      std::ifstream in(dir / name, std::ios::binary);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const std::string expected = dump_report(two_qubit_fixture(r, zeta));
      if (!in || buffer.str() != expected) {
        ++mismatches;
        mismatched.push_back(name);
      }
      checked.push_back(name);
    }
    results["checked"] = std::move(checked);
    if (mismatches > 0) results["mismatched"] = std::move(mismatched);
    table.add("mismatch_count", static_cast<double>(mismatches), 0.5);
  }
  json params{{"dir", cfg.fixtures_dir}, {"regen", cfg.regen}};
  return finish(cfg, std::move(params), std::move(results), std::move(table));
}

}  // namespace

std::string format_complex(double re, double im) {
  re += 0.0;  // normalize -0
  im += 0.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.6g%s%.6gi", re, im < 0 ? "-" : "+", std::abs(im));
  return buf;
}

std::vector<std::pair<double, double>> fixture_grid() {
  std::vector<std::pair<double, double>> grid;
  for (const double r : {0.0, 0.3, 0.6, 1.0}) {
    for (int quarter = 0; quarter < 4; ++quarter) {
      grid.emplace_back(r, quarter * std::numbers::pi / 2.0);
    }
  }
  return grid;
}

std::string fixture_file_name(double r, int zeta_quarter_turns) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "two_qubit_r%.1f_q%d.json", r, zeta_quarter_turns);
  return buf;
}

nlohmann::json two_qubit_fixture(double r, double zeta) {
  const auto dh = closed_form_dh(r, zeta);
  const auto nc = closed_form_nc(r, zeta);
  json dh_json = json::object(), nc_json = json::object();
  for (const auto& [name, m] : dh) dh_json[name] = m;
  for (const auto& [name, v] : nc) nc_json[name] = v;
  Matrix reduced(2, 2);
  reduced << (1.0 + r) / 2.0, 0.0, 0.0, (1.0 - r) / 2.0;
  json reduced_json;
  to_json(reduced_json, reduced);
  return json{{"params", {{"r", r}, {"zeta", zeta}}},
              {"dh", std::move(dh_json)},
              {"nc", std::move(nc_json)},
              {"reduced_density", std::move(reduced_json)},
              {"purity", (1.0 + r * r) / 2.0},
              {"entanglement", std::sqrt(1.0 - r * r)}};
}

RunResult run_command(const RunConfig& cfg) {
  if (cfg.tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (cfg.output != "json" && cfg.output != "table") {
    throw std::invalid_argument("output must be json or table");
  }
  if (cfg.command == "nc-value") return run_nc_value(cfg);
  if (cfg.command == "dh-value") return run_dh_value(cfg);
  if (cfg.command == "star-check") return run_star_check(cfg);
  if (cfg.command == "locality-check") return run_locality_check(cfg);
  if (cfg.command == "two-qubit") return run_two_qubit(cfg);
  if (cfg.command == "epr-grid") return run_epr_grid(cfg);
  if (cfg.command == "fixtures") return run_fixtures(cfg);
  throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace qv::cli

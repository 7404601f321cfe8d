#include "bmv/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bmv/errors.hpp"

namespace bmv::io {

using json = nlohmann::ordered_json;

namespace {

json complex_to_json(cx v) { return json::array({v.real(), v.imag()}); }

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const json& rows, int n, const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError(std::string(name) + " must be an array of n rows");
  CMat m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(std::string(name) + " row " + std::to_string(i) +
                       " must have n entries");
    for (int j = 0; j < n; ++j) {
      const json& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw ParseError(std::string(name) + "[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] must be [re, im]");
      m(i, j) = cx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

Instance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("A") || !j.contains("B"))
    throw ParseError("instance JSON must be {\"n\", \"A\", \"B\"}");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw ParseError("n must be a positive integer");
  const int n = j["n"].get<int>();
  Instance inst;
  inst.a = matrix_from_json(j["A"], n, "A");
  inst.b = matrix_from_json(j["B"], n, "B");
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["n"] = inst.a.n();
  j["A"] = matrix_to_json(inst.a);
  j["B"] = matrix_to_json(inst.b);
  return j.dump(2) + "\n";
}

std::string inspect_to_json(const core::HermitianPair& pair) {
  json j;
  j["n"] = pair.n();
  j["flags"] = {{"commuting", pair.flags().commuting},
                {"distinct_b", pair.flags().distinct_b},
                {"positive_b", pair.flags().positive_b}};
  j["b"] = pair.b();
  j["a_diag"] = pair.a_diag();
  return j.dump(2) + "\n";
}

std::string measure_to_json(const measure::BmvMeasure& m) {
  json j;
  json atoms = json::array();
  for (const auto& a : m.atoms)
    atoms.push_back(json{{"b", a.location}, {"w", a.weight}});
  j["atoms"] = std::move(atoms);
  json density = json::array();
  for (const auto& d : m.density)
    density.push_back(json{{"s", d.s}, {"w", d.value}, {"err", d.err}});
  j["density"] = std::move(density);
  j["meta"] = {{"R", m.contour_radius},
               {"N", m.contour_nodes},
               {"epsilon", m.epsilon},
               {"nodes_per_interval", m.nodes_per_interval},
               {"commuting", m.commuting_fast_path}};
  return j.dump(2) + "\n";
}

std::string report_to_json(const laplace::VerificationReport& rep,
                           bool include_timing, double timing_ms) {
  json j;
  j["pass"] = rep.pass;
  j["checks"] = {{"laplace", rep.checks.laplace},
                 {"positivity", rep.checks.positivity},
                 {"support", rep.checks.support},
                 {"mass", rep.checks.mass},
                 {"oracle", rep.checks.oracle},
                 {"proof_identities", rep.checks.proof},
                 {"monotone", rep.checks.monotone},
                 {"realness", rep.checks.realness},
                 {"monodromy", rep.checks.monodromy}};
  json lap = json::array();
  for (const auto& p : rep.laplace_residuals)
    lap.push_back(json{{"t", p.t},
                       {"f", p.f},
                       {"laplace_mu", p.laplace},
                       {"abs", p.abs_err},
                       {"rel", p.rel_err}});
  j["laplace_residuals"] = std::move(lap);
  j["min_density"] = rep.min_density;
  j["max_density"] = rep.max_density;
  json sup = json::array();
  for (const auto& s : rep.support_samples)
    sup.push_back(json{{"s", s.s}, {"omega", s.omega}});
  j["support_samples"] = std::move(sup);
  j["support_leakage"] = rep.support_leakage;
  j["mass_balance"] = {{"laplace_at_0", rep.mass_lhs},
                       {"trace_exp_A", rep.mass_rhs},
                       {"abs", rep.mass_abs},
                       {"rel", rep.mass_rel}};
  json gaps = json::array();
  for (const auto& g : rep.oracle_gaps)
    gaps.push_back(json{{"s", g.s},
                        {"omega", g.omega},
                        {"oracle", g.oracle},
                        {"gap", g.gap}});
  j["oracle_gaps"] = std::move(gaps);
  json proofs = json::array();
  for (const auto& p : rep.proof_identities)
    proofs.push_back(json{{"t", p.t}, {"diamond", p.diamond}, {"star", p.star}});
  j["proof_identities"] = std::move(proofs);
  j["monotone_decrease"] = rep.monotone_decrease;
  j["meta"] = {{"n", rep.n},
               {"commuting", rep.commuting},
               {"epsilon", rep.epsilon},
               {"R", rep.contour_radius},
               {"N", rep.contour_nodes},
               {"atom_weight_convention", rep.atom_weight_convention}};
  if (include_timing) j["timing_ms"] = timing_ms;
  return j.dump(2) + "\n";
}

std::string branch_points_to_json(
    const std::vector<spectral::BranchPoint>& bps) {
  json arr = json::array();
  for (const auto& bp : bps)
    arr.push_back(json{{"z", complex_to_json(bp.z)},
                       {"order", bp.order},
                       {"genuine", bp.genuine}});
  return arr.dump(2) + "\n";
}

std::string proof_to_json(const std::vector<laplace::ProofIdentityResult>& rs) {
  json arr = json::array();
  for (const auto& r : rs)
    arr.push_back(json{{"t", r.t}, {"diamond", r.diamond}, {"star", r.star}});
  return arr.dump(2) + "\n";
}

std::string density_csv(const measure::BmvMeasure& m) {
  std::string out = "s,omega\n";
  for (const auto& d : m.density)
    out += format_double(d.s) + "," + format_double(d.value) + "\n";
  return out;
}

std::string laplace_csv(const std::vector<double>& t,
                        const std::vector<double>& f,
                        const std::vector<double>& lmu) {
  std::string out = "t,f,laplace_mu\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += format_double(t[i]) + "," + format_double(f[i]) + "," +
           format_double(lmu[i]) + "\n";
  return out;
}

std::string oracle_csv(const std::vector<double>& s,
                       const std::vector<double>& omega) {
  std::string out = "s,omega_oracle\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += format_double(s[i]) + "," + format_double(omega[i]) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

} // namespace bmv::io

#pragma once

#include <string>
#include <vector>

#include "bmv/branch_points.hpp"
#include "bmv/instance_gen.hpp"
#include "bmv/measure.hpp"
#include "bmv/pair.hpp"
#include "bmv/verify.hpp"

namespace bmv::io {

// Instance schema (shared with the CLI):
//   {"n": int, "A": [[[re,im],...],...], "B": [[[re,im],...],...]}
// row-major, every entry a 2-array of doubles.
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

std::string inspect_to_json(const core::HermitianPair& pair);

// {"atoms":[{"b","w"}],"density":[{"s","w","err"}],"meta":{...}}
std::string measure_to_json(const measure::BmvMeasure& m);

std::string report_to_json(const laplace::VerificationReport& rep,
                           bool include_timing, double timing_ms);

// [{"z":[re,im],"order":k,"genuine":bool}]
std::string branch_points_to_json(const std::vector<spectral::BranchPoint>& bps);

std::string proof_to_json(const std::vector<laplace::ProofIdentityResult>& rs);

std::string density_csv(const measure::BmvMeasure& m); // header: s,omega
std::string laplace_csv(const std::vector<double>& t,
                        const std::vector<double>& f,
                        const std::vector<double>& lmu); // t,f,laplace_mu
std::string oracle_csv(const std::vector<double>& s,
                       const std::vector<double>& omega); // s,omega_oracle

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace bmv::io

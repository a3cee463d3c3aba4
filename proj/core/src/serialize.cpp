// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fhstep/serialize.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fhstep {

using nlohmann::json;

std::string schedule_to_json(const StepsizeSchedule& schedule) {
  json j;
  j["kind"] = schedule_kind_name(schedule.kind);
  j["T"] = schedule.T;
  j["etas"] = schedule.etas;
  j["a"] = schedule.a;
  if (schedule.s.has_value())
    j["s"] = *schedule.s;
  else
    j["s"] = nullptr;
  j["mu"] = schedule.mu;
  j["L"] = schedule.L;
  if (std::isfinite(schedule.beta))
    j["beta"] = schedule.beta;
  else
    j["beta"] = nullptr;
  j["n_sample"] = schedule.n_sample;
  j["sdp_converged"] = schedule.sdp_converged;
  return j.dump(2);
}

StepsizeSchedule schedule_from_json(const std::string& text) {
  const json j = json::parse(text);
  StepsizeSchedule s;
  s.kind = schedule_kind_from_name(j.at("kind").get<std::string>());
  s.T = j.at("T").get<Index>();
  s.etas = j.at("etas").get<std::vector<double>>();
  s.a = j.at("a").get<std::vector<double>>();
  if (j.contains("s") && !j["s"].is_null()) s.s = j["s"].get<double>();
  s.mu = j.value("mu", 0.0);
  s.L = j.value("L", 0.0);
  if (j.contains("beta") && !j["beta"].is_null()) s.beta = j["beta"].get<double>();
  s.n_sample = j.value("n_sample", Index{0});
  s.sdp_converged = j.value("sdp_converged", true);
  if (s.T != static_cast<Index>(s.etas.size()))
    throw std::runtime_error("schedule_from_json: T does not match etas length");
  for (double eta : s.etas)
    if (!(eta > 0.0) || !std::isfinite(eta))
      throw std::runtime_error("schedule_from_json: stepsizes must be positive and finite");
  return s;
}

StepsizeSchedule schedule_from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open schedule file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return schedule_from_json(text);
}

std::string bounds_to_json(const SpectralBounds& bounds) {
  json j;
  j["mu"] = bounds.mu;
  j["L"] = bounds.L;
  j["beta"] = bounds.beta;
  j["lambda_max"] = bounds.lambda_max;
  j["lambda_min_nz"] = bounds.lambda_min_nz;
  j["kappa"] = bounds.kappa;
  j["gamma"] = bounds.gamma;
  return j.dump(2);
}

std::string standard_lp_debug_json(const StandardLp& lp) {
  json j;
  j["m"] = lp.rows();
  j["n"] = lp.cols();
  j["nnz"] = lp.a.nnz();
  j["offset"] = lp.objective_offset;
  return j.dump(2);
}

namespace {

json dense_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string block_lmi_to_json(const BlockLmi& lmi) {
  json j;
  j["num_vars"] = lmi.num_vars;
  j["objective"] = std::vector<double>(lmi.objective.data(), lmi.objective.data() + lmi.objective.size());
  json blocks = json::array();
  for (const auto& blk : lmi.blocks) {
    json b;
    b["g0"] = dense_to_json(blk.g0);
    json gs = json::array();
    for (const auto& g : blk.g) gs.push_back(dense_to_json(g));
    b["g"] = std::move(gs);
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  return j.dump();
}

std::string sdp_solution_to_json(const SdpSolution& solution) {
  json j;
  j["x"] = std::vector<double>(solution.x.data(), solution.x.data() + solution.x.size());
  j["objective_value"] = solution.objective_value;
  j["worst_block_min_eig"] = solution.worst_block_min_eig;
  j["iterations"] = solution.iterations;
  j["converged"] = solution.converged;
  return j.dump(2);
}

std::string synthetic_spec_to_json(const SyntheticSpec& spec) {
  json j;
  j["m"] = spec.m;
  j["n"] = spec.n;
  j["singular_values"] = spec.singular_values;
  j["seed"] = spec.seed;
  return j.dump(2);
}

SyntheticSpec synthetic_spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  SyntheticSpec s;
  s.m = j.at("m").get<Index>();
  s.n = j.at("n").get<Index>();
  s.singular_values = j.at("singular_values").get<std::vector<double>>();
  s.seed = j.value("seed", std::uint64_t{0});
  return s;
}

std::string gamma_report_to_json(const GammaSpectrumReport& report) {
  json j;
  json blocks = json::array();
  for (const auto& b : report.blocks) {
    blocks.push_back({{"sigma", b.sigma},
                      {"delta_1", b.delta_1},
                      {"delta_2", b.delta_2},
                      {"epsilon", b.epsilon},
                      {"lambda_1", b.lambda_1},
                      {"lambda_2", b.lambda_2}});
  }
  j["blocks"] = std::move(blocks);
  j["computed"] = report.computed;
  j["max_abs_deviation"] = report.max_abs_deviation;
  j["matching_performed"] = report.matching_performed;
  j["tolerance"] = report.tolerance;
  return j.dump(2);
}

}  // namespace fhstep

// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_SERIALIZE_HPP
#define FHSTEP_SERIALIZE_HPP

#include <string>

#include "fhstep/analysis.hpp"
#include "fhstep/fixtures.hpp"
#include "fhstep/mps.hpp"
#include "fhstep/schedule.hpp"
#include "fhstep/sdp.hpp"
#include "fhstep/spectrum.hpp"

namespace fhstep {

// JSON views of the public artifacts. Kept string-based so that vendored JSON
// machinery stays out of the installed headers.

// {"kind","T","etas":[...],"a":[...],"s":...,"mu","L","beta","n_sample"}
std::string schedule_to_json(const StepsizeSchedule& schedule);
StepsizeSchedule schedule_from_json(const std::string& text);
StepsizeSchedule schedule_from_json_file(const std::string& path);

// {"mu","L","beta","lambda_max","lambda_min_nz","kappa","gamma"}
std::string bounds_to_json(const SpectralBounds& bounds);

// {"m","n","nnz","offset"}
std::string standard_lp_debug_json(const StandardLp& lp);

std::string block_lmi_to_json(const BlockLmi& lmi);
std::string sdp_solution_to_json(const SdpSolution& solution);

std::string synthetic_spec_to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const std::string& text);

std::string gamma_report_to_json(const GammaSpectrumReport& report);

}  // namespace fhstep

#endif  // FHSTEP_SERIALIZE_HPP

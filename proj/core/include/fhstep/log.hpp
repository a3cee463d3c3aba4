// Copyright (c) 2026 The fhstep Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FHSTEP_LOG_HPP
#define FHSTEP_LOG_HPP

#include <cstdio>

namespace fhstep {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from the FH_LOG environment variable (error|warn|info|debug),
// default warn. Messages go to stderr.
LogLevel log_level();
void set_log_level(LogLevel level);
void log_message(LogLevel level, const char* fmt, ...);

}  // namespace fhstep

#define FHSTEP_LOG_ERROR(...) ::fhstep::log_message(::fhstep::LogLevel::error, __VA_ARGS__)
#define FHSTEP_LOG_WARN(...) ::fhstep::log_message(::fhstep::LogLevel::warn, __VA_ARGS__)
#define FHSTEP_LOG_INFO(...) ::fhstep::log_message(::fhstep::LogLevel::info, __VA_ARGS__)
#define FHSTEP_LOG_DEBUG(...) ::fhstep::log_message(::fhstep::LogLevel::debug, __VA_ARGS__)

#endif  // FHSTEP_LOG_HPP

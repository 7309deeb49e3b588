#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qfilt/literals.hpp"

namespace qfilt {

inline constexpr int kJobFormatVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitMismatch = 3 };

struct JobOptions {
  std::optional<unsigned> degree_bound;
  std::optional<std::uint64_t> seed;
};

struct JobOutcome {
  /// Empty when the job has no commands or failed validation.
  io::Json document;
  int exit_code = kExitOk;
  std::string error;
};

/// Validates and executes a job document:
///
///   {"version": 1, "scheme": ..., "labels": [...],
///    "filters": {name: literal}, "modules": {name: literal},
///    "families": {name: {"kind": "grid", ...} | {"kind": "all"}},
///    "commands": [{"cmd": "spec" | "op" | "classify" | "table" | "member" |
///                  "support" | "glue" | "oracle" | "explain" | "laws", ...}]}
///
/// Validation errors give exit code 2; failed oracle or law checks give 3.
JobOutcome run_job(const io::Json& job, const JobOptions& options = {});
JobOutcome run_job_text(std::string_view text, const JobOptions& options = {});

}  // namespace qfilt

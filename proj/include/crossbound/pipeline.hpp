#pragma once

#include <ostream>
#include <set>
#include <string>

#include "crossbound/config.hpp"

namespace crossbound {

// Exit codes shared by the CLI: 0 success, 2 usage/input error, 3 store error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitStore = 3;

// Parses archives and revision logs, builds selections and discussions, and
// persists the canonical store under <output_dir>/store. Re-runs overwrite
// deterministically. Parse problems become diagnostics, not failures.
int cmd_ingest(const AnalysisConfig& config, std::ostream& log);

// Computes the full metrics bundle from the store into <output_dir>/metrics.json.
int cmd_analyze(const AnalysisConfig& config, std::ostream& log);

// Renders the bundle into <output_dir>/report. formats is a subset of
// {"csv", "json", "dot"}; empty means all three.
int cmd_report(const AnalysisConfig& config, const std::set<std::string>& formats,
               std::ostream& log);

}  // namespace crossbound

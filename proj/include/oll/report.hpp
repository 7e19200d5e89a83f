#pragma once

#include <string>
#include <vector>

#include "oll/verifier.hpp"

namespace oll {

struct EmitOptions {
  std::string outdir;
  bool csv = true;
  bool json = true;
  bool svg = false;
};

std::string csv_quote(const std::string& s);
std::string format_17g(double v);

// Deterministic serializations; identical reports give identical bytes.
std::string report_to_json(const VerificationReport& rep);
std::string reports_index_csv(const std::vector<VerificationReport>& reps);
std::string report_table_csv(const VerificationReport& rep);

// Log-log polyline plot; series sharing the x axis. Nonpositive values are
// dropped from the drawing.
std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::vector<double>& xs,
                       const std::vector<std::pair<std::string, std::vector<double>>>& series);

// Writes index + per-report files under outdir; returns the paths written.
std::vector<std::string> emit_report(const std::vector<VerificationReport>& reps,
                                     const EmitOptions& opt);

}  // namespace oll

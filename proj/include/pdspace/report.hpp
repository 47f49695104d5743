#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace pdspace {

enum class Verdict { Witnessed, Refuted, Inconclusive };

std::string to_string(Verdict verdict);

/// Outcome of a probe run. A verdict other than Inconclusive means the probe's defining
/// inequality was checked, exactly or within the stated tolerance.
struct ProbeReport {
  std::string probe;
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::json witnesses = nlohmann::json::object();
  std::vector<std::pair<double, double>> trace;
};

/// {"probe": ..., "verdict": ..., "trace": [[param, value], ...], "witnesses": ...}
nlohmann::json report_to_json(const ProbeReport& report);

/// "param,value" rows with a header line.
std::string trace_to_csv(const ProbeReport& report);

}  // namespace pdspace

#include "pdspace/report.hpp"

#include <charconv>

namespace pdspace {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Witnessed: return "WITNESSED";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

nlohmann::json report_to_json(const ProbeReport& report) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [param, value] : report.trace) trace.push_back({param, value});
  return {{"probe", report.probe},
          {"verdict", to_string(report.verdict)},
          {"trace", std::move(trace)},
          {"witnesses", report.witnesses}};
}

std::string trace_to_csv(const ProbeReport& report) {
  std::string out = "param,value\n";
  char buf[64];
  for (const auto& [param, value] : report.trace) {
    out.append(buf, std::to_chars(buf, buf + sizeof(buf), param).ptr);
    out += ',';
    out.append(buf, std::to_chars(buf, buf + sizeof(buf), value).ptr);
    out += '\n';
  }
  return out;
}

}  // namespace pdspace

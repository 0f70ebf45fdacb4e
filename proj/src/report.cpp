#include "pilab/report.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace pilab {

void ReportBundle::add(const std::string &name, const std::string &claim,
                       bool ok, const std::string &detail, uint64_t cost) {
  checks.push_back({name, claim, ok ? "pass" : "fail", detail, cost});
}

void ReportBundle::add_skipped(const std::string &name,
                               const std::string &claim,
                               const std::string &why) {
  checks.push_back({name, claim, "skipped (budget)", why, 0});
}

bool ReportBundle::all_passed() const { return failures() == 0; }

size_t ReportBundle::failures() const {
  size_t n = 0;
  for (auto &c : checks)
    if (c.status == "fail")
      ++n;
  return n;
}

std::string ReportBundle::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title;
  j["seed"] = seed;
  j["config"] = config;
  j["checks"] = nlohmann::ordered_json::array();
  for (auto &c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["claim"] = c.claim;
    jc["status"] = c.status;
    if (!c.detail.empty())
      jc["detail"] = c.detail;
    jc["cost"] = c.cost;
    j["checks"].push_back(std::move(jc));
  }
  j["failures"] = failures();
  return j.dump(2) + "\n";
}

void ReportBundle::write_file(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write report: " + path);
  out << to_json();
}

} // namespace pilab

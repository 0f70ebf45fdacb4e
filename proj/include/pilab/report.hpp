#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pilab {

// One verification step inside a bundle. `cost` is an operation count rather
// than wall time so identical configurations serialize identically.
struct CheckRecord {
  std::string name;
  std::string claim; // which mathematical statement the check exercises
  std::string status; // "pass" | "fail" | "skipped (budget)"
  std::string detail;
  uint64_t cost = 0;
};

struct ReportBundle {
  std::string title;
  uint64_t seed = 1;
  std::string config; // serialized run configuration
  std::vector<CheckRecord> checks;

  void add(const std::string &name, const std::string &claim, bool ok,
           const std::string &detail = "", uint64_t cost = 0);
  void add_skipped(const std::string &name, const std::string &claim,
                   const std::string &why);

  bool all_passed() const; // skipped checks do not count as failures
  size_t failures() const;

  // Deterministic JSON: insertion-ordered keys, no timestamps or durations.
  std::string to_json() const;
  void write_file(const std::string &path) const;
};

} // namespace pilab

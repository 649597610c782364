#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace rieszmod {

struct LawResult {
  std::string id;
  bool passed = true;
  std::size_t checked = 0;
  nlohmann::json counterexample;  // null while passing
};

/// Outcome of a law suite. Failures are recorded as data (first
/// counterexample per law), never thrown.
class LawReport {
 public:
  /// Registers a law so that it shows up even if no sample exercises it.
  void declare(const std::string& id);
  void record(const std::string& id, bool ok, const nlohmann::json& witness);

  bool all_passed() const;
  std::size_t passed_count() const;
  const std::vector<LawResult>& laws() const { return laws_; }
  const LawResult* find(const std::string& id) const;

  void merge(const LawReport& other);

 private:
  LawResult& entry(const std::string& id);
  std::vector<LawResult> laws_;
};

/// { "laws": [ { "id", "passed", "counterexample" }, ... ] }
nlohmann::json to_json(const LawReport& report);

}  // namespace rieszmod

#include "rieszmod/law_report.hpp"

#include <algorithm>

namespace rieszmod {

LawResult& LawReport::entry(const std::string& id) {
  auto it = std::find_if(laws_.begin(), laws_.end(),
                         [&](const LawResult& r) { return r.id == id; });
  if (it != laws_.end()) return *it;
  laws_.push_back(LawResult{id, true, 0, nullptr});
  return laws_.back();
}

void LawReport::declare(const std::string& id) { entry(id); }

void LawReport::record(const std::string& id, bool ok, const nlohmann::json& witness) {
  LawResult& r = entry(id);
  ++r.checked;
  if (!ok && r.passed) {
    r.passed = false;
    r.counterexample = witness;
  }
}

bool LawReport::all_passed() const {
  return std::all_of(laws_.begin(), laws_.end(), [](const LawResult& r) { return r.passed; });
}

std::size_t LawReport::passed_count() const {
  return static_cast<std::size_t>(
      std::count_if(laws_.begin(), laws_.end(), [](const LawResult& r) { return r.passed; }));
}

const LawResult* LawReport::find(const std::string& id) const {
  auto it = std::find_if(laws_.begin(), laws_.end(),
                         [&](const LawResult& r) { return r.id == id; });
  return it == laws_.end() ? nullptr : &*it;
}

void LawReport::merge(const LawReport& other) {
  for (const auto& r : other.laws_) {
    LawResult& mine = entry(r.id);
    mine.checked += r.checked;
    if (!r.passed && mine.passed) {
      mine.passed = false;
      mine.counterexample = r.counterexample;
    }
  }
}

nlohmann::json to_json(const LawReport& report) {
  nlohmann::json laws = nlohmann::json::array();
  for (const auto& r : report.laws()) {
    laws.push_back({{"id", r.id}, {"passed", r.passed}, {"counterexample", r.counterexample}});
  }
  return {{"laws", laws}};
}

}  // namespace rieszmod

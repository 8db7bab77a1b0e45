#pragma once

#include <string>
#include <vector>

namespace sandtorsor {

/* Tally for one named property. */
struct CheckTally {
  std::string name;
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::size_t violations = 0;
  bool skipped = false;

  void record(bool ok) {
    ++instances;
    ok ? ++passes : ++violations;
  }
  CheckTally& operator+=(const CheckTally& o) {
    instances += o.instances;
    passes += o.passes;
    violations += o.violations;
    skipped = skipped && o.skipped;
    return *this;
  }
};

struct Violation {
  std::string check;
  std::string instance;
  std::string detail;
};

/* Tallies plus violation details; the shared result shape of every verifier. */
struct CheckReport {
  std::vector<CheckTally> tallies;
  std::vector<Violation> violations;

  CheckTally& tally(const std::string& name) {
    for (auto& t : tallies)
      if (t.name == name) return t;
    tallies.push_back({name});
    return tallies.back();
  }
  void record(const std::string& name, bool ok, const std::string& instance = {}, const std::string& detail = {}) {
    tally(name).record(ok);
    if (!ok) violations.push_back({name, instance, detail});
  }
  void merge(const CheckReport& o) {
    for (const auto& t : o.tallies) tally(t.name) += t;
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
  std::size_t violation_count() const {
    std::size_t n = 0;
    for (const auto& t : tallies) n += t.violations;
    return n;
  }
  bool clean() const { return violation_count() == 0; }
};

}  // namespace sandtorsor

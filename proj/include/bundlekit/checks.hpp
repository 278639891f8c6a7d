#ifndef BUNDLEKIT_CHECKS_HPP
#define BUNDLEKIT_CHECKS_HPP

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bundlekit {

using DetailValue = std::variant<long long, bool, std::string>;

struct Detail {
  std::string key;
  DetailValue value;
};

/// Outcome of one verification, with the evidence that decided it.
struct Check {
  std::string id;  // e.g. "claim1.lci"
  std::string description;
  bool passed = false;
  std::vector<Detail> details;

  Check& add(std::string key, DetailValue v)
  {
    details.push_back({std::move(key), std::move(v)});
    return *this;
  }
  Check& add(std::string key, bool v) { return add(std::move(key), DetailValue(v)); }
  Check& add(std::string key, long long v) { return add(std::move(key), DetailValue(v)); }
  Check& add(std::string key, int v) { return add(std::move(key), DetailValue(static_cast<long long>(v))); }
  Check& add(std::string key, const char* v) { return add(std::move(key), DetailValue(std::string(v))); }
};

inline bool all_passed(const std::vector<Check>& checks)
{
  for (auto& c : checks)
    if (!c.passed) return false;
  return true;
}

class ClaimFailed : public std::runtime_error {
public:
  explicit ClaimFailed(Check c) : std::runtime_error("check failed: " + c.id + " (" + c.description + ")"), check(std::move(c)) {}
  Check check;
};

} // namespace bundlekit

#endif // BUNDLEKIT_CHECKS_HPP

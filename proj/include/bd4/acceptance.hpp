// The twelve acceptance criteria as runnable suites, shared by the
// acceptance test binary and the `report` verb of the CLI.

#ifndef BD4_ACCEPTANCE_HPP
#define BD4_ACCEPTANCE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace bd4 {

struct AcceptanceConfig {
  std::uint64_t seed = 0;
  // Laws left out of the uniqueness run.
  std::set<int> dropped_laws;
  int random_instances = 10'000;  // simulation, larger random instances
  int soundness_samples = 1'000;  // per rule and semantics
  // A suite whose estimated work exceeds this is skipped.
  std::uint64_t max_work = std::numeric_limits<std::uint64_t>::max();
  // Criteria to run; empty means all.
  std::set<int> only;
};

struct CriterionResult {
  enum class Status { Pass, Fail, Skipped };
  int id = 0;
  std::string name;
  Status status = Status::Fail;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

std::string_view status_name(CriterionResult::Status s);  // "pass", "fail", "skipped"

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const AcceptanceConfig& config);

// Runs the selected criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceConfig& config,
    const std::function<void(const CriterionResult&)>& on_result = {});

// `criterion=4 name=uniqueness status=fail seconds=0.41 limit=10 detail="..."`
// Without timing the seconds field is left out.
std::string format_lines(const CriterionResult& r, bool timing = true);
// `FAIL  4 uniqueness (0.41s / 10s): ...`
std::string format_human(const CriterionResult& r, bool timing = true);

}  // namespace bd4

#endif  // BD4_ACCEPTANCE_HPP

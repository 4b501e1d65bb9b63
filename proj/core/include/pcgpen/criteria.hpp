#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pcgpen::acceptance {

struct CriterionResult {
  std::string id;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 0;  // sweep workers; 0 uses hardware concurrency
};

// Runs the end-to-end acceptance criteria A1..A9. The long compressed-sensing
// run shared by A5 and A7 is computed once per suite.
class AcceptanceSuite {
 public:
  explicit AcceptanceSuite(AcceptanceOptions opts = {});
  ~AcceptanceSuite();
  AcceptanceSuite(const AcceptanceSuite&) = delete;
  AcceptanceSuite& operator=(const AcceptanceSuite&) = delete;

  static const std::vector<std::string>& ids();
  // Oracle suites cheap enough for `pcgpen verify` without arguments.
  static const std::vector<std::string>& quick_ids();

  CriterionResult run(const std::string& id);

 private:
  struct LongRun;
  const LongRun& long_run();

  AcceptanceOptions opts_;
  std::unique_ptr<LongRun> long_run_;
};

// "A1 PASS (1.23 s) detail"
std::string format_result(const CriterionResult& r);

}  // namespace pcgpen::acceptance

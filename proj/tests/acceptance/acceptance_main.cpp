// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: pcgpen_acceptance [A1 A2 ...]   (default: all)

#include <iostream>
#include <string>
#include <vector>

#include "pcgpen/criteria.hpp"

int main(int argc, char** argv) {
  using pcgpen::acceptance::AcceptanceSuite;
  std::vector<std::string> ids(argv + 1, argv + argc);
  if (ids.empty()) ids = AcceptanceSuite::ids();
  AcceptanceSuite suite;
  int failures = 0;
  for (const std::string& id : ids) {
    const auto r = suite.run(id);
    std::cout << pcgpen::acceptance::format_result(r) << std::endl;
    if (!r.passed) ++failures;
  }
  std::cout << (ids.size() - failures) << "/" << ids.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}

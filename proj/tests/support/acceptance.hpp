#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tautring4::acceptance {

struct Outcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> notes;  // one line per sub-check, failures first-class
  double seconds = 0;
};

int criterion_count();
std::string criterion_title(int id);
Outcome run_criterion(int id);  // 1-based

// "PASS  3  products of divisors (4 ambients)" style line.
std::string summary_line(const Outcome& o);

}  // namespace tautring4::acceptance

// Prints one PASS/FAIL line per acceptance criterion, indented notes below.
// With criterion numbers as arguments only those run; exit status is 0 iff
// every criterion that ran passed.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "acceptance.hpp"

using namespace tautring4::acceptance;

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int id = 1; id <= criterion_count(); ++id) ids.push_back(id);
  bool ok = true;
  for (int id : ids) {
    if (id < 1 || id > criterion_count()) {
      std::cerr << "no criterion " << id << "\n";
      return 1;
    }
    Outcome o = run_criterion(id);
    ok = ok && o.pass;
    std::cout << summary_line(o) << "  [" << std::fixed << std::setprecision(2) << o.seconds << " s]\n";
    for (auto& n : o.notes) std::cout << "      " << n << "\n";
    std::cout.flush();
  }
  return ok ? 0 : 1;
}

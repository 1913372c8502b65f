#include <iomanip>
#include <iostream>

#include "dgforge/acceptance.hpp"

int main() {
  int failed = 0;
  dgforge::run_acceptance([&](const dgforge::CriterionResult& r) {
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " -- " << r.detail << " ("
              << std::fixed << std::setprecision(1) << r.seconds << " s)" << std::endl;
  });
  return failed ? 1 : 0;
}

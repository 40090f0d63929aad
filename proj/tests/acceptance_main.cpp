// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any
// failure.
#include <cstdlib>
#include <iostream>
#include <string>

#include "purelab/verify/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::stoull(argv[1]);
  bool all = true;
  for (const auto& r : purelab::verify::run_acceptance(seed)) {
    std::cout << purelab::verify::format_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}

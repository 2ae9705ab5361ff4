// Runs the acceptance criteria; optional arguments select criterion ids.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "minkcurve/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-v" || a == "--verbose")
      verbose = true;
    else
      ids.push_back(std::atoi(a.c_str()));
  }
  int failed = 0;
  for (const auto& r : mink::run_acceptance(ids)) {
    std::printf("%s\n", r.line().c_str());
    if (verbose || !r.pass)
      for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

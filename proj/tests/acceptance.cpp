#include <cstdlib>
#include <iostream>

#include "smgd/reproduce.hpp"

int main() {
  const char* env = std::getenv("SMGD_CORPUS");
  const auto rep = smgd::run_acceptance(env ? env : SMGD_CORPUS_DIR);
  for (const auto& r : rep.results) std::cout << smgd::format_line(r) << "  [" << r.seconds << " s]\n";
  return rep.all_pass() ? 0 : 1;
}

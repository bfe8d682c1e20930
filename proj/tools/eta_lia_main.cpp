// eta-lia: a small exact QF_LIA solver speaking an SMT-LIB v2 subset on
// stdin/stdout. Ships as the default backend for eta-check; any solver with
// the same interface can replace it via --solver.

#include <fstream>
#include <iostream>
#include <sstream>

#include "lia/solver.hpp"

int main(int argc, char** argv) {
  std::ostringstream input;
  if (argc > 1) {
    std::ifstream file(argv[1]);
    if (!file) {
      std::cerr << "eta-lia: cannot open " << argv[1] << "\n";
      return 2;
    }
    input << file.rdbuf();
  } else {
    input << std::cin.rdbuf();
  }

  bool error = false;
  std::string output = eta::lia::run_smt_script(input.str(), error);
  std::cout << output << std::flush;
  return error ? 1 : 0;
}

#include <iostream>
#include <string>
#include <vector>

#include "eulercalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eulercalc::cli::run(std::move(args), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "qbound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qbound::cli::run(args, std::cout, std::cerr);
}

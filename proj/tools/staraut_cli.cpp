#include <iostream>
#include <string>
#include <vector>

#include "staraut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return staraut::cli::run(args, std::cout);
}

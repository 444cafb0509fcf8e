#include <iostream>
#include <string>
#include <vector>

#include "genlevel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return genlevel::cli::run(args, std::cout, std::cerr);
}

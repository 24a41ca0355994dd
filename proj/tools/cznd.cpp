#include <iostream>
#include <string>
#include <vector>

#include "cznd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cznd::cli::main(args, std::cout, std::cerr);
}

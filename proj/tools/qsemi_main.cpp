#include <iostream>
#include <string>
#include <vector>

#include "qsemi/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qsemi::run_command(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "auxetica/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return auxetica::run_command(args, std::cout, std::cerr);
}

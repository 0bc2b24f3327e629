#include <iostream>
#include <string>
#include <vector>

#include "tdom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tdom::run_cli(args, std::cout, std::cerr);
}

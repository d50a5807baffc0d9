#include <iostream>
#include <string>
#include <vector>

#include "ckn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ckn::cli::run_cli(args, std::cout, std::cerr);
}

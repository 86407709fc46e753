#include <iostream>

#include "pipeline.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tvnet::cli::run_cli(args, std::cout, std::cerr);
}

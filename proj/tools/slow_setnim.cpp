#include <iostream>
#include <string>
#include <vector>

#include "slowsetnim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return slowsetnim::cli::run(args, std::cout, std::cerr, std::cin);
}

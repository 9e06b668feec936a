#include <iostream>
#include <string>
#include <vector>

#include "qclone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qclone::cli::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "purelab/cli.hpp"

int main(int argc, char** argv) {
  return purelab::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

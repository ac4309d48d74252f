#include <iostream>

#include "fibrifier/cli.hpp"

int main(int argc, char** argv) {
  return fibrifier::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

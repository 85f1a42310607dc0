#include <iostream>

#include "bjg/cli.hpp"

int main(int argc, char** argv) {
  return bjg::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

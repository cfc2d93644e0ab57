#include <iostream>

#include "fmi/cli.hpp"

int main(int argc, char** argv) {
  return fmi::RunCli(argc, argv, std::cin, std::cout, std::cerr);
}

#include <iostream>

#include "hiermet/cli.hpp"

int main(int argc, char** argv) {
  return hiermet::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "divprod/cli.hpp"

int main(int argc, char** argv) {
  return divprod::cli::run(argc, argv, std::cout, std::cerr);
}

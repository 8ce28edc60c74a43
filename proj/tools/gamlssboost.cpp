#include <iostream>

#include "gamlssboost/cli.hpp"

int main(int argc, char** argv) {
  return gamlssboost::cli::run(argc, argv, std::cout, std::cerr);
}

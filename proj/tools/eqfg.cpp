#include <iostream>

#include "eqfg/cli.hpp"

int main(int argc, char** argv) {
  return eqfg::run({argv + 1, argv + argc}, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "matspace/cli.hpp"

int main(int argc, char** argv) {
  return matspace::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

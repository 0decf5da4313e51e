#include <string>
#include <vector>

#include "stance/cli.hpp"

int main(int argc, char** argv) {
  return stance::cli::run(std::vector<std::string>(argv, argv + argc));
}

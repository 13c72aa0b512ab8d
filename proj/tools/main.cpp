#include <iostream>
#include <string>
#include <vector>

#include "dtco/cli.hpp"

int main(int argc, char** argv) {
    return dtco::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "pxhardy/cli.hpp"

int main(int argc, char** argv) {
    return pxhardy::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

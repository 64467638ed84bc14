#include <iostream>

#include "bvf/cli.hpp"

int main(int argc, char** argv) {
    return bvf::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "coprox/cli.hpp"

int main(int argc, char** argv)
{
    return coprox::cli::run(argc, argv, std::cout, std::cerr);
}

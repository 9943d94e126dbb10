#include <iostream>

#include "prat/cli.hpp"

int main(int argc, char ** argv)
{
    return prat::cli::run(argc, argv, std::cout, std::cerr);
}

#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    return mastermind::cli::run({argv, argv + argc}, std::cin, std::cout, std::cerr);
}

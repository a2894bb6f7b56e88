#include <iostream>

#include "vkg/app/commands.hpp"

int main(int argc, char** argv)
{
    try {
        return vkg::app::run_cli(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}

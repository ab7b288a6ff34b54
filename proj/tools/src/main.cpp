#include <iostream>
#include <string>
#include <vector>

#include "tclevy_cli/run_config.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return tclevy::cli::main_entry(args, std::cout, std::cerr);
}

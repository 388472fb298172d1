#include <iostream>

#include <qhahn/cli.hpp>

int main(int argc, char** argv) {
    return qhahn::cli::run_cli(argc, argv, std::cout, std::cerr);
}

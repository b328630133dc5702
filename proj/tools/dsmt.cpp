#include <iostream>

#include "dsmt/cli.hpp"

int main(int argc, char** argv) { return dsmt::cli::dispatch(argc, argv, std::cout, std::cerr); }

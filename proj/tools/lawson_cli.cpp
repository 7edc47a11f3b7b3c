#include "lawson/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lawson::parse_and_dispatch(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "g2flow_cli/run.hpp"

int main(int argc, char** argv) { return g2flow::cli::run_main(argc, argv, std::cout, std::cerr); }

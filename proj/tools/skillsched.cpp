#include <iostream>

#include "skillsched/cli.hpp"

int main(int argc, char** argv) { return skillsched::run_cli(argc, argv, std::cout, std::cerr); }

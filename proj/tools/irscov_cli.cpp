// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "irscov/cli.hpp"

int main(int argc, char** argv) { return irscov::cli_main(argc, argv, std::cout, std::cerr); }

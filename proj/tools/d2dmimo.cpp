// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) { return d2dmimo::cli::run(argc, argv, std::cout, std::cerr); }

// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "chargechain/cli.hpp"

int main(int argc, char** argv) { return chargechain::cli::run(argc, argv, std::cout, std::cerr); }

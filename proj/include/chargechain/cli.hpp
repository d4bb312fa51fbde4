// Copyright 2026 The Chargechain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chargechain/credentials.hpp"

namespace chargechain::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kValidationFailure = 1, kVerificationFailure = 2 };

/// Environment variable naming the key-store directory.
inline constexpr const char* kKeystoreEnv = "CHARGECHAIN_KEYSTORE";

/// "YYYY-MM-DD" to days since 1970-01-01; nullopt if malformed.
std::optional<credentials::Day> parse_date(std::string_view text);
std::string format_date(credentials::Day day);

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chargechain::cli

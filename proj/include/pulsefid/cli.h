// Copyright 2026 The pulsefid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PULSEFID_CLI_H
#define PULSEFID_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace pulsefid {

constexpr const char *kVersion = "1.0.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitNoConvergence = 3,
};

/// Formats with 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

/// Runs the command line `args` (without the program name). Data goes to
/// `--out` or `out`; summaries of data-producing subcommands go to
/// `--summary` or `err`. Returns an ExitCode.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace pulsefid

#endif

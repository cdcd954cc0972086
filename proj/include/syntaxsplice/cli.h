// Copyright 2026 The SyntaxSplice Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNTAXSPLICE_CLI_H_
#define SYNTAXSPLICE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace syntaxsplice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Runs `syntaxsplice <subcommand> [flags]`. args[0] is the program name.
// Data goes to files or `out`; diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace syntaxsplice::cli

#endif  // SYNTAXSPLICE_CLI_H_

// Copyright 2026 The BodyNet Authors
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

#ifndef BODYNET_CLI_HPP_
#define BODYNET_CLI_HPP_

#include <ostream>

namespace bodynet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitOutOfResource = 3;
inline constexpr int kExitTooLarge = 4;
inline constexpr int kExitIo = 5;

/// Entry point of the `bodynet` tool. Machine-readable output goes to `out`,
/// messages to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace bodynet

#endif  // BODYNET_CLI_HPP_

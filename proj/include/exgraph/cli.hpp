// Copyright 2026 The exgraph Authors.
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

#ifndef EXGRAPH_CLI_HPP_
#define EXGRAPH_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace exgraph {

// Runs one subcommand (`args[0]` is the program name). Returns 0 on
// success and 1 on bad input, with a JSON error object on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace exgraph

#endif  // EXGRAPH_CLI_HPP_

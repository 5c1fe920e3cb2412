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

#ifndef EXGRAPH_ATOMIC_FILE_HPP_
#define EXGRAPH_ATOMIC_FILE_HPP_

#include <string>
#include <string_view>

namespace exgraph {

// Writes to a sibling temporary file, syncs it and renames it over `path`,
// so readers see either the old file or the complete new one. Throws
// Error(kIoError).
void write_file_atomic(const std::string& path, std::string_view content);

// Whole file as a string. Throws Error(kIoError).
std::string read_file(const std::string& path);

}  // namespace exgraph

#endif  // EXGRAPH_ATOMIC_FILE_HPP_

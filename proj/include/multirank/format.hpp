// Copyright 2026 The Multirank Authors.
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

#ifndef MULTIRANK_FORMAT_HPP_
#define MULTIRANK_FORMAT_HPP_

#include <charconv>
#include <string>

namespace multirank {

// Shortest decimal form that reads back to the same double; locale-free.
inline std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

}  // namespace multirank

#endif  // MULTIRANK_FORMAT_HPP_

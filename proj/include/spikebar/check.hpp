// Copyright 2026 The Spikebar Authors
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

#ifndef SPIKEBAR_CHECK_HPP_
#define SPIKEBAR_CHECK_HPP_

#include <sstream>
#include <stdexcept>
#include <string>

namespace spikebar {

// Contract violation (bad argument, dimension mismatch, broken invariant).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// I/O or runtime failure carrying file/line context in the message.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void check_failed(const char* expr, const char* file,
                                      int line, const std::string& msg) {
  std::ostringstream os;
  os << "check failed: " << expr;
  if (!msg.empty()) os << " (" << msg << ")";
  os << " at " << file << ":" << line;
  throw ContractError(os.str());
}
}  // namespace detail

}  // namespace spikebar

#define SB_CHECK(cond)                                                  \
  do {                                                                  \
    if (!(cond))                                                        \
      ::spikebar::detail::check_failed(#cond, __FILE__, __LINE__, ""); \
  } while (0)

#define SB_CHECK_MSG(cond, msg)                                          \
  do {                                                                   \
    if (!(cond))                                                         \
      ::spikebar::detail::check_failed(#cond, __FILE__, __LINE__, msg); \
  } while (0)

#endif  // SPIKEBAR_CHECK_HPP_

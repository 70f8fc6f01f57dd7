// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_ERROR_HPP
#define CCRT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ccrt {

// Numeric values are mirrored by the ccrt_status enum of the C API.
enum class ErrorCode : int {
  invalid_argument = 1,
  overflow = 2,
  division_by_zero = 3,
  not_coprime = 4,
  no_inverse = 5,
  inconsistent_remainders = 6,
  domain = 7,
  limit_exceeded = 8,
  precondition = 9,
  config = 10,
  io = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ccrt

#endif  // CCRT_ERROR_HPP

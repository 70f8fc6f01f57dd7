// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

// Shared tokenizer for the "a+bi" text form of Gaussian integers and
// complex values.

#ifndef CCRT_SRC_TEXT_HPP
#define CCRT_SRC_TEXT_HPP

#include <string>
#include <string_view>

namespace ccrt::detail {

struct ComplexTokens {
  std::string re;  // empty when absent
  std::string im;  // coefficient text, "+"/"-"/"" means unit
  bool has_im = false;
};

ComplexTokens split_complex(std::string_view text);

// Number formatting with the shortest round-trip representation.
std::string format_double(double v);

}  // namespace ccrt::detail

#endif  // CCRT_SRC_TEXT_HPP

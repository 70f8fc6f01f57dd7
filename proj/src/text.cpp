// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "text.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "ccrt/error.hpp"

namespace ccrt::detail {

namespace {

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
      continue;
    }
    if (std::isspace(c)) continue;
    out.push_back(static_cast<char>(c));
  }
  return out;
}

}  // namespace

ComplexTokens split_complex(std::string_view text) {
  const std::string s = normalize(text);
  if (s.empty()) fail(ErrorCode::invalid_argument, "empty complex literal");
  ComplexTokens tok;
  if (s.back() != 'i' && s.back() != 'j') {
    tok.re = s;
    return tok;
  }
  tok.has_im = true;
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    tok.im = body;
  } else {
    tok.re = body.substr(0, split);
    tok.im = body.substr(split);
  }
  return tok;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0 into 0
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace ccrt::detail

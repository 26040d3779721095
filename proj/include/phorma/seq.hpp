#ifndef PHORMA_SEQ_HPP
#define PHORMA_SEQ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phorma/error.hpp"

namespace phorma {

// Entry values are positive and fit 32 bits; counts need 64.
using Val = std::uint32_t;
using Seq = std::vector<Val>;

// "3,4,7,8" -> {3,4,7,8}.  Whitespace around numbers and commas is fine.
inline Seq parse_seq(const std::string& text) {
  Seq out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] { while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i; };
  skip_ws();
  if (i == n) throw parse_error("empty sequence", i);
  for (;;) {
    skip_ws();
    if (i == n || text[i] < '0' || text[i] > '9') throw parse_error("expected number", i);
    std::uint64_t v = 0;
    while (i < n && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (v > 0xffffffffull) throw parse_error("entry too large", i);
      ++i;
    }
    out.push_back(static_cast<Val>(v));
    skip_ws();
    if (i == n) break;
    if (text[i] != ',') throw parse_error("expected ','", i);
    ++i;
  }
  return out;
}

inline std::string format_seq(const Seq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

inline bool is_strictly_increasing(const Seq& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return true;
}

}  // namespace phorma

#endif  // PHORMA_SEQ_HPP

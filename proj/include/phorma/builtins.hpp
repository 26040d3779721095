#ifndef PHORMA_BUILTINS_HPP
#define PHORMA_BUILTINS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phorma/boolexpr.hpp"
#include "phorma/error.hpp"
#include "phorma/seq.hpp"
#include "phorma/seqcore.hpp"

namespace phorma {

// L-piece packing restriction over bounds (p, q, p, q).
inline PhormaSpec bl_spec(Val p, Val q) {
  PhormaSpec spec;
  spec.bounds = {p, q, p, q};
  spec.order = OrderRestriction::expression(BoolExpr::parse(
      "(a1 >= a3) & (a2 >= a4) & (a1 >= a2) & ((a1 != a2) | (a3 >= a4)) & "
      "((a1 != a3) | (a2 = a4)) & ((a2 != a4) | (a1 = a3))",
      4, 'a'));
  return spec;
}

// Monotone chain over n entries bounded by amax: a1 >= a2 >= ... (or strict).
inline PhormaSpec sym_spec(std::uint32_t n, Val amax, bool strict) {
  if (n == 0) throw domain_error("sym spec needs at least one entry");
  PhormaSpec spec;
  spec.bounds.assign(n, amax);
  std::string expr;
  for (std::uint32_t i = 1; i < n; ++i) {
    if (!expr.empty()) expr += " & ";
    expr += "(a" + std::to_string(i) + (strict ? " > a" : " >= a") +
            std::to_string(i + 1) + ")";
  }
  spec.order = OrderRestriction::expression(BoolExpr::parse(expr, n, 'a'));
  return spec;
}

// T-piece (z-orientation) packing restriction over seven entries.
inline PhormaSpec tz_spec(const Seq& bounds) {
  if (bounds.size() != 7) throw domain_error("Tz spec needs exactly 7 bounds");
  PhormaSpec spec;
  spec.bounds = bounds;
  spec.order = OrderRestriction::expression(BoolExpr::parse(
      "(a2 >= a1) & (a4 >= a3) & (a7 >= a6) & (a6 >= a5) & (a2 >= a4) & "
      "((a2 != a4) | (a1 >= a3)) & ((a1 != a2) | (a5 = a6)) & "
      "((a3 != a4) | (a1 = a2)) & ((a3 != a4) | (a5 = a7))",
      7, 'a'));
  return spec;
}

// "name:arg:arg..." spec generators for the CLI:
//   sym_ge:n:amax   sym_gt:n:amax   L:p:q   Tz:a1:a2:a3:a4:a5:a6:a7
inline PhormaSpec builtin_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  auto arg = [&](std::size_t i) -> Val {
    if (i >= parts.size() || parts[i].empty())
      throw domain_error("builtin '" + text + "' is missing arguments");
    std::uint64_t v = 0;
    for (char c : parts[i]) {
      if (c < '0' || c > '9')
        throw domain_error("builtin argument '" + parts[i] + "' is not a number");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > 0xffffffffull) throw domain_error("builtin argument too large");
    }
    if (v == 0) throw domain_error("builtin arguments must be positive");
    return static_cast<Val>(v);
  };
  auto expect = [&](std::size_t k) {
    if (parts.size() != k + 1)
      throw domain_error("builtin '" + parts[0] + "' takes " + std::to_string(k) +
                         " arguments");
  };
  if (parts[0] == "sym_ge" || parts[0] == "sym_gt") {
    expect(2);
    return sym_spec(arg(1), arg(2), parts[0] == "sym_gt");
  }
  if (parts[0] == "L") {
    expect(2);
    return bl_spec(arg(1), arg(2));
  }
  if (parts[0] == "Tz") {
    expect(7);
    Seq b;
    for (std::size_t i = 1; i <= 7; ++i) b.push_back(arg(i));
    return tz_spec(b);
  }
  throw domain_error("unknown builtin '" + parts[0] +
                     "' (expected sym_ge, sym_gt, L, or Tz)");
}

}  // namespace phorma

#endif  // PHORMA_BUILTINS_HPP

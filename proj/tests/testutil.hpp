#ifndef PHORMA_TESTS_TESTUTIL_HPP
#define PHORMA_TESTS_TESTUTIL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phorma/phorma.hpp"

namespace testutil {

using phorma::Seq;
using phorma::Val;

// Deterministic random comparison expression of bounded depth over
// indices 1..dim, written in the library's surface grammar.
inline std::string random_expr_text(std::mt19937_64& rng, std::uint32_t dim,
                                    int depth, char prefix) {
  auto pick = [&](std::uint64_t n) { return phorma::uniform_below(rng, n); };
  static const char* ops[] = {"<=", ">=", "<", ">", "=", "!="};
  if (depth == 0 || pick(3) == 0) {
    const std::uint64_t l = 1 + pick(dim);
    const std::uint64_t r = 1 + pick(dim);
    return std::string(1, prefix) + std::to_string(l) + " " + ops[pick(6)] + " " +
           std::string(1, prefix) + std::to_string(r);
  }
  switch (pick(3)) {
    case 0:
      return "!(" + random_expr_text(rng, dim, depth - 1, prefix) + ")";
    case 1:
      return "(" + random_expr_text(rng, dim, depth - 1, prefix) + ") & (" +
             random_expr_text(rng, dim, depth - 1, prefix) + ")";
    default:
      return "(" + random_expr_text(rng, dim, depth - 1, prefix) + ") | (" +
             random_expr_text(rng, dim, depth - 1, prefix) + ")";
  }
}

// All strictly ascending sequences of length m with entries <= cap.
inline std::vector<Seq> ascending_below(Val cap, std::size_t m) {
  std::vector<Seq> out;
  Seq cur;
  auto rec = [&](auto&& self, Val from) -> void {
    if (cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (Val v = from; v <= cap; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

// All strictly ascending sequences dominated entrywise by gamma.
inline std::vector<Seq> dominated_by(const Seq& gamma) {
  std::vector<Seq> out;
  Seq cur;
  auto rec = [&](auto&& self, std::size_t i, Val from) -> void {
    if (i == gamma.size()) {
      out.push_back(cur);
      return;
    }
    for (Val v = from; v <= gamma[i]; ++v) {
      cur.push_back(v);
      self(self, i + 1, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, 1);
  return out;
}

inline std::uint64_t multinomial(const Seq& delta) {
  std::uint64_t n = 0;
  std::uint64_t r = 1;
  for (Val p : delta) {
    for (Val i = 1; i <= p; ++i) {
      ++n;
      r = phorma::checked_mul(r, n) / i;  // exact: binomial prefix products
    }
  }
  return r;
}

}  // namespace testutil

#endif  // PHORMA_TESTS_TESTUTIL_HPP

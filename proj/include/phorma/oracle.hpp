#ifndef PHORMA_ORACLE_HPP
#define PHORMA_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phorma/error.hpp"
#include "phorma/index.hpp"
#include "phorma/seq.hpp"
#include "phorma/seqcore.hpp"

namespace phorma {

// Candidate-space size of the exhaustive scan (prod a_i).
inline std::uint64_t brute_candidates(const PhormaSpec& spec) {
  std::uint64_t p = 1;
  for (Val b : spec.bounds) p = checked_mul(p, b);
  return p;
}

// Exhaustive reference enumeration of A(a,B,C), lexicographically sorted.
// Refuses candidate spaces beyond the budget instead of grinding silently.
inline std::vector<Seq> brute_enum(const PhormaSpec& spec,
                                   std::uint64_t budget = 100000000ull) {
  spec.validate();
  const std::uint64_t cand = brute_candidates(spec);
  if (cand > budget)
    throw domain_error("candidate space " + std::to_string(cand) +
                       " exceeds the oracle budget " + std::to_string(budget));
  const std::size_t n = spec.bounds.size();
  std::vector<Seq> out;
  Seq alpha(n, 1);
  for (;;) {
    if (member(spec, alpha)) out.push_back(alpha);
    // Odometer over the box [1, a_1] x ... x [1, a_n], last entry fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (alpha[i] < spec.bounds[i]) {
        ++alpha[i];
        break;
      }
      alpha[i] = 1;
      if (i == 0) return out;
    }
  }
}

struct OracleReport {
  std::string spec_id;
  std::uint64_t brute_count = 0;
  std::uint64_t index_count = 0;
  bool set_equal = false;
  std::vector<std::uint64_t> round_trip_failures;  // first few offending ranks
  std::optional<std::string> first_divergence;

  bool ok() const { return set_equal && round_trip_failures.empty() && !first_divergence; }
};

// Cross-check every index operation against the exhaustive enumeration:
// same set, rank/unrank mutually inverse, next sweeps the family in rank
// order, samples are members.
inline OracleReport verify(const PhormaSpec& spec, const PhormaIndex& idx,
                           std::uint64_t budget = 100000000ull,
                           const std::string& spec_id = "") {
  OracleReport rep;
  rep.spec_id = spec_id;
  constexpr std::size_t kKeepFailures = 16;
  auto diverge = [&](const std::string& msg) {
    if (!rep.first_divergence) rep.first_divergence = msg;
  };

  const std::vector<Seq> brute = brute_enum(spec, budget);
  rep.brute_count = brute.size();
  rep.index_count = idx.count();

  std::vector<Seq> by_rank;
  by_rank.reserve(rep.index_count);
  for (std::uint64_t r = 0; r < rep.index_count; ++r) {
    Seq alpha = idx.unrank(r);
    const std::uint64_t back = idx.rank(alpha);
    if (back != r) {
      if (rep.round_trip_failures.size() < kKeepFailures)
        rep.round_trip_failures.push_back(r);
      diverge("rank(unrank(" + std::to_string(r) + ")) = " + std::to_string(back));
    }
    by_rank.push_back(std::move(alpha));
  }

  std::vector<Seq> sorted = by_rank;
  std::sort(sorted.begin(), sorted.end());
  rep.set_equal = sorted == brute;
  if (!rep.set_equal) diverge("enumerated set differs from the exhaustive scan");

  for (const Seq& alpha : brute) {
    const std::uint64_t r = idx.rank(alpha);
    if (r >= rep.index_count || by_rank[r] != alpha) {
      if (rep.round_trip_failures.size() < kKeepFailures)
        rep.round_trip_failures.push_back(r);
      diverge("unrank(rank(" + format_seq(alpha) + ")) diverges");
      break;
    }
  }

  if (rep.index_count > 0) {
    Seq cur = by_rank.front();
    for (std::uint64_t r = 0; r + 1 < rep.index_count; ++r) {
      std::optional<Seq> nx = idx.next(cur);
      if (!nx || *nx != by_rank[r + 1]) {
        diverge("next at rank " + std::to_string(r) + " diverges");
        break;
      }
      cur = std::move(*nx);
    }
    if (idx.next(by_rank.back())) diverge("next past the last member is present");

    std::mt19937_64 rng(12345);
    for (int i = 0; i < 8; ++i)
      if (!member(spec, idx.sample(rng))) {
        diverge("sample produced a non-member");
        break;
      }
  }

  if (rep.brute_count != rep.index_count) diverge("counts differ");
  return rep;
}

}  // namespace phorma

#endif  // PHORMA_ORACLE_HPP

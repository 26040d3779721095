#ifndef PHORMA_INDEX_HPP
#define PHORMA_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phorma/error.hpp"
#include "phorma/hfamily.hpp"
#include "phorma/redgen.hpp"
#include "phorma/seq.hpp"
#include "phorma/seqcore.hpp"

namespace phorma {

// Figure-style parameters of a compiled index.
struct IndexStats {
  std::uint64_t v_g = 0;            // 1 (root) + reduced layer + H layer
  std::uint64_t v_h = 0;            // H vertex count, sink included
  std::uint64_t red_count = 0;      // |red A|
  std::uint64_t total = 0;          // |A|
  std::uint64_t roof_count = 0;     // distinct roofs
  std::uint64_t max_roof_count = 0; // store seeds
  std::uint64_t lambda = 0;         // largest bucket
  std::uint64_t nu = 0;             // populated buckets (sink counts as one)
  double mu = 0.0;                  // v_h / nu
  double density = 0.0;             // |A| / prod a_i, in log space
};

// Exact uniform draw from {0..n-1} by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw domain_error("uniform draw from an empty range");
  const std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (umax % n + 1) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t v = rng();
    if (rem == 0 || v <= umax - rem) return v % n;
  }
}

// The compiled index over A(a,B,C): a sorted reduced layer carrying
// cumulative offsets, over a shared H vertex store.  rank/unrank decompose
// every member as (reduced sequence, ascending value sequence).
class PhormaIndex {
 public:
  struct RedEntry {
    Seq beta;
    Seq roofseq;
    std::uint64_t order = 0;   // members in this reduced class
    std::uint64_t offset = 0;  // members in lexicographically smaller classes
  };

  static PhormaIndex compile(PhormaSpec spec, const GenOptions& opt = {}) {
    spec.validate();
    std::vector<RedRoof> reds = gen_reduced_all(spec, opt);
    std::vector<Seq> roofs;
    roofs.reserve(reds.size());
    for (const RedRoof& rr : reds) roofs.push_back(rr.roofseq);
    HVertexStore store = HVertexStore::build_store(std::move(roofs));

    std::vector<RedEntry> entries;
    entries.reserve(reds.size());
    std::uint64_t running = 0;
    for (RedRoof& rr : reds) {
      RedEntry e;
      e.order = store.roof_order(rr.roofseq);
      e.offset = running;
      running = checked_add(running, e.order);
      e.beta = std::move(rr.beta);
      e.roofseq = std::move(rr.roofseq);
      entries.push_back(std::move(e));
    }
    return PhormaIndex(std::move(spec), std::move(entries), std::move(store), running);
  }

  // Rebuild from deserialized parts; offsets and totals are revalidated.
  static PhormaIndex assemble(PhormaSpec spec, std::vector<RedEntry> entries,
                              HVertexStore store, std::uint64_t total) {
    spec.validate();
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i && !(entries[i - 1].beta < entries[i].beta))
        throw domain_error("reduced layer is not sorted");
      if (entries[i].offset != running)
        throw domain_error("reduced layer offsets are inconsistent");
      if (entries[i].order != store.roof_order(entries[i].roofseq))
        throw domain_error("reduced layer order contradicts the store");
      running = checked_add(running, entries[i].order);
    }
    if (running != total) throw domain_error("total does not match the reduced layer");
    return PhormaIndex(std::move(spec), std::move(entries), std::move(store), total);
  }

  const PhormaSpec& spec() const { return spec_; }
  const std::vector<RedEntry>& reduced() const { return reds_; }
  const HVertexStore& store() const { return store_; }

  std::uint64_t count() const { return total_; }

  std::uint64_t rank(const Seq& alpha) const {
    if (std::optional<member_fail> fail = member_check(spec_, alpha))
      throw not_member_error("sequence " + format_seq(alpha) + " is not a member", *fail);
    const Seq beta = reduce(alpha);
    const RedEntry* e = find_red(beta);
    if (!e) throw error("member's reduced sequence missing from the index");
    return checked_add(e->offset, store_.h_rank(e->roofseq, sort_distinct(alpha)));
  }

  Seq unrank(std::uint64_t r) const {
    if (r >= total_)
      throw domain_error("rank " + std::to_string(r) + " out of range [0, " +
                         std::to_string(total_) + ")");
    // Last entry whose offset <= r.
    auto it = std::upper_bound(reds_.begin(), reds_.end(), r,
                               [](std::uint64_t v, const RedEntry& e) { return v < e.offset; });
    --it;
    const Seq se = store_.h_unrank(it->roofseq, r - it->offset);
    return recover(it->beta, se);
  }

  std::optional<Seq> next(const Seq& alpha) const {
    const std::uint64_t r = rank(alpha);
    if (r + 1 == total_) return std::nullopt;
    return unrank(r + 1);
  }

  Seq sample(std::mt19937_64& rng) const {
    if (total_ == 0) throw domain_error("sample from an empty family");
    return unrank(uniform_below(rng, total_));
  }

  Seq sample(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return sample(rng);
  }

  IndexStats stats() const {
    IndexStats s;
    s.red_count = reds_.size();
    s.total = total_;
    s.v_h = store_.vertex_count();
    s.v_g = 1 + s.red_count + s.v_h;
    std::vector<Seq> distinct;
    for (const RedEntry& e : reds_) distinct.push_back(e.roofseq);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    s.roof_count = distinct.size();
    s.max_roof_count = store_.seed_count();
    s.lambda = store_.max_bucket_size();
    s.nu = store_.bucket_count();
    s.mu = static_cast<double>(s.v_h) / static_cast<double>(s.nu);
    if (total_ > 0) {
      double log_space = 0.0;
      for (Val b : spec_.bounds) log_space += std::log(static_cast<double>(b));
      s.density = std::exp(std::log(static_cast<double>(total_)) - log_space);
    }
    return s;
  }

 private:
  PhormaIndex(PhormaSpec spec, std::vector<RedEntry> reds, HVertexStore store,
              std::uint64_t total)
      : spec_(std::move(spec)),
        reds_(std::move(reds)),
        store_(std::move(store)),
        total_(total) {}

  const RedEntry* find_red(const Seq& beta) const {
    const auto it = std::lower_bound(
        reds_.begin(), reds_.end(), beta,
        [](const RedEntry& e, const Seq& b) { return e.beta < b; });
    if (it == reds_.end() || it->beta != beta) return nullptr;
    return &*it;
  }

  PhormaSpec spec_;
  std::vector<RedEntry> reds_;  // sorted by beta
  HVertexStore store_;
  std::uint64_t total_ = 0;
};

}  // namespace phorma

#endif  // PHORMA_INDEX_HPP

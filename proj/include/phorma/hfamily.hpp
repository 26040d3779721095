#ifndef PHORMA_HFAMILY_HPP
#define PHORMA_HFAMILY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "phorma/error.hpp"
#include "phorma/seq.hpp"

namespace phorma {

// Decrement successor: last entry drops by 1, earlier entries cascade down
// to keep strict ascent.  Absent exactly when gamma_m = m (gamma is the
// minimal ascending sequence of its length).
inline std::optional<Seq> w_step(const Seq& gamma) {
  if (gamma.empty()) throw domain_error("w_step of the sink");
  const std::size_t m = gamma.size();
  if (gamma.back() <= m) return std::nullopt;
  Seq g = gamma;
  --g[m - 1];
  for (std::size_t i = m - 1; i-- > 0;)
    if (g[i] >= g[i + 1]) g[i] = g[i + 1] - 1;
  return g;
}

// Shortening successor: drop the last entry; absent only for the sink.
inline std::optional<Seq> s_step(const Seq& gamma) {
  if (gamma.empty()) return std::nullopt;
  Seq g = gamma;
  g.pop_back();
  return g;
}

// j-fold w_step in closed form: lower the last entry by j, then cascade.
// Requires j <= gamma_m - m so the result stays strictly ascending.
inline Seq w_fall(const Seq& gamma, Val j) {
  Seq g = gamma;
  g.back() -= j;
  for (std::size_t i = g.size() - 1; i-- > 0;)
    if (g[i] >= g[i + 1]) g[i] = g[i + 1] - 1;
  return g;
}

// The vertex store of the union H-family: every vertex reachable from the
// seed roofs via w_step/s_step, bucketed by (last entry, length), each with
// its order (number of paths to the sink) and the order of its w-successor.
class HVertexStore {
 public:
  struct Entry {
    Seq gamma;
    std::uint64_t order = 0;
    std::uint64_t worder = 0;  // order of w_step(gamma), 0 if absent
  };

  struct Bucket {
    Val last = 0;
    std::uint32_t len = 0;
    std::vector<Entry> entries;  // lexicographically sorted
  };

  // Seeds are the reachability-maximal roofs: a roof reachable from another
  // (it gains an in-edge in the union closure) is redundant.  Single-entry
  // maximal roofs are kept out of the store; queries against such a roof (c)
  // only ever look up the chain below c, so (c) is re-seeded exactly when
  // (c-1) is not already covered by the remaining seeds.
  static HVertexStore build_store(std::vector<Seq> roofs) {
    for (const Seq& r : roofs)
      if (!is_strictly_increasing(r))
        throw domain_error("roof " + format_seq(r) + " is not strictly increasing");
    std::sort(roofs.begin(), roofs.end());
    roofs.erase(std::unique(roofs.begin(), roofs.end()), roofs.end());

    // Union closure of all roofs, recording which roofs have an in-edge.
    std::set<Seq> roof_set(roofs.begin(), roofs.end());
    std::set<Seq> dominated;
    {
      std::set<Seq> seen(roofs.begin(), roofs.end());
      std::queue<Seq> work;
      for (const Seq& r : roofs) work.push(r);
      while (!work.empty()) {
        Seq v = std::move(work.front());
        work.pop();
        for (const std::optional<Seq>& u : {w_step_or_none(v), s_step(v)}) {
          if (!u) continue;
          if (roof_set.count(*u)) dominated.insert(*u);
          if (seen.insert(*u).second) work.push(*u);
        }
      }
    }

    std::vector<Seq> seeds;
    std::optional<Seq> dropped_single;
    for (const Seq& r : roofs) {
      if (dominated.count(r)) continue;
      if (r.size() == 1)
        dropped_single = r;  // at most one: two singletons dominate each other
      else
        seeds.push_back(r);
    }

    std::set<Seq> closure = close_over(seeds);
    if (dropped_single && (*dropped_single)[0] >= 2) {
      Seq probe{(*dropped_single)[0] - 1};
      if (!closure.count(probe)) {
        seeds.push_back(*dropped_single);
        std::sort(seeds.begin(), seeds.end());
        closure = close_over(seeds);
      }
    }

    return from_vertices(std::vector<Seq>(closure.begin(), closure.end()),
                         std::move(seeds), nullptr);
  }

  // Rebuild from serialized vertices carrying their orders; every order is
  // revalidated against the recurrence order = order(s) + order(w).
  static HVertexStore from_serialized(std::vector<std::pair<Seq, std::uint64_t>> vertices,
                                      std::vector<Seq> seeds) {
    std::vector<Seq> vs;
    vs.reserve(vertices.size());
    std::map<Seq, std::uint64_t> given;
    for (auto& [g, o] : vertices) {
      if (!given.emplace(g, o).second)
        throw domain_error("duplicate vertex in serialized store");
      vs.push_back(std::move(g));
    }
    std::sort(seeds.begin(), seeds.end());
    return from_vertices(std::move(vs), std::move(seeds), &given);
  }

  bool contains(const Seq& gamma) const {
    return gamma.empty() || find_entry(gamma) != nullptr;
  }

  // Number of paths from gamma to the sink; gamma must be stored.
  std::uint64_t order_of(const Seq& gamma) const {
    if (gamma.empty()) return 1;  // the sink's single empty path
    const Entry* e = find_entry(gamma);
    if (!e) throw domain_error("vertex " + format_seq(gamma) + " not in store");
    return e->order;
  }

  std::uint64_t worder_of(const Seq& gamma) const {
    if (gamma.empty()) return 0;
    const Entry* e = find_entry(gamma);
    if (!e) throw domain_error("vertex " + format_seq(gamma) + " not in store");
    return e->worder;
  }

  // Order of a roof that may itself have been left out of the store; its
  // successors are always stored, so the recurrence closes the gap.
  std::uint64_t roof_order(const Seq& gamma) const {
    if (gamma.empty()) return 1;
    if (const Entry* e = find_entry(gamma)) return e->order;
    std::uint64_t o = order_of(*s_step(gamma));
    if (std::optional<Seq> w = w_step(gamma)) o = checked_add(o, order_of(*w));
    return o;
  }

  // Local hash: the rank of gamma among ascending sequences of its length
  // dominated by the roof, in path-label order (decrement edges first).
  // Computed as the sum of post-fall orders down the unique encoding path.
  std::uint64_t h_rank(const Seq& roofseq, const Seq& gamma) const {
    check_dominated(roofseq, gamma);
    std::uint64_t h = 0;
    Seq cur = roofseq;
    for (std::size_t k = gamma.size(); k >= 1; --k) {
      const Seq fall = w_fall(cur, cur.back() - gamma[k - 1]);
      if (fall.back() > k) h = checked_add(h, order_of(*w_step(fall)));
      cur = fall;
      cur.pop_back();
    }
    return h;
  }

  // The nonzero summands of h_rank in path order (falls without a
  // w-successor contribute nothing).
  std::vector<std::uint64_t> post_fall_orders(const Seq& roofseq, const Seq& gamma) const {
    check_dominated(roofseq, gamma);
    std::vector<std::uint64_t> terms;
    Seq cur = roofseq;
    for (std::size_t k = gamma.size(); k >= 1; --k) {
      const Seq fall = w_fall(cur, cur.back() - gamma[k - 1]);
      if (fall.back() > k) terms.push_back(order_of(*w_step(fall)));
      cur = fall;
      cur.pop_back();
    }
    return terms;
  }

  // Inverse of h_rank over 0 <= r < roof_order(roofseq).
  Seq h_unrank(const Seq& roofseq, std::uint64_t r) const {
    if (roofseq.empty()) throw domain_error("h_unrank under the sink");
    if (r >= roof_order(roofseq))
      throw domain_error("local rank " + std::to_string(r) + " out of range for roof " +
                         format_seq(roofseq));
    const std::size_t m = roofseq.size();
    Seq out(m);
    Seq cur = roofseq;
    for (std::size_t k = m; k >= 1; --k) {
      const Val q = cur.back() - static_cast<Val>(k);
      // Smallest fall depth whose remaining w-subtree no longer exceeds r:
      // order(w_fall(cur, j+1)) decreases in j, so the predicate is monotone.
      Val lo = 0, hi = q;
      while (lo < hi) {
        const Val mid = lo + (hi - lo) / 2;
        if (order_of(w_fall(cur, mid + 1)) <= r)
          hi = mid;
        else
          lo = mid + 1;
      }
      const Seq fall = w_fall(cur, lo);
      out[k - 1] = fall.back();
      if (lo < q) r -= order_of(w_fall(cur, lo + 1));
      cur = fall;
      cur.pop_back();
    }
    if (r != 0) throw error("h_unrank invariant violated: residual rank");
    return out;
  }

  // Stats.  The sink occupies its own pseudo-bucket, so bucket_count is the
  // number of populated (last, length) buckets plus one.
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t bucket_count() const { return buckets_.size() + 1; }
  std::size_t max_bucket_size() const {
    std::size_t mx = 0;
    for (const Bucket& b : buckets_) mx = std::max(mx, b.entries.size());
    return mx;
  }
  std::size_t seed_count() const { return seeds_.size(); }
  const std::vector<Seq>& seeds() const { return seeds_; }
  const std::vector<Bucket>& buckets() const { return buckets_; }

 private:
  std::vector<Bucket> buckets_;  // sorted by (len, last)
  std::vector<Seq> seeds_;
  std::size_t vertex_count_ = 1;  // sink included
  // Flat (last, len) -> bucket table when small enough, else ordered map.
  std::uint64_t a_star_ = 0;
  std::uint64_t n_star_ = 0;
  std::vector<std::uint32_t> table_;
  std::map<std::pair<Val, std::uint32_t>, std::uint32_t> bucket_map_;
  static constexpr std::uint32_t kNoBucket = 0xffffffffu;
  static constexpr std::uint64_t kMaxFlatTable = 1ull << 24;

  static std::optional<Seq> w_step_or_none(const Seq& g) {
    return g.empty() ? std::nullopt : w_step(g);
  }

  static std::set<Seq> close_over(const std::vector<Seq>& seeds) {
    std::set<Seq> seen(seeds.begin(), seeds.end());
    std::queue<Seq> work;
    for (const Seq& s : seeds) work.push(s);
    while (!work.empty()) {
      Seq v = std::move(work.front());
      work.pop();
      if (v.empty()) continue;
      for (const std::optional<Seq>& u : {w_step(v), s_step(v)})
        if (u && seen.insert(*u).second) work.push(*u);
    }
    seen.erase(Seq{});
    return seen;
  }

  // given != nullptr carries serialized orders to validate instead of derive.
  static HVertexStore from_vertices(std::vector<Seq> vertices, std::vector<Seq> seeds,
                                    const std::map<Seq, std::uint64_t>* given) {
    HVertexStore st;
    st.seeds_ = std::move(seeds);

    // (len, last, lex) ascending is a topological order: both successors of a
    // vertex sort strictly earlier, so orders fill in a single sweep.
    std::sort(vertices.begin(), vertices.end(), [](const Seq& a, const Seq& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      if (a.empty()) return false;
      if (a.back() != b.back()) return a.back() < b.back();
      return a < b;
    });

    std::map<Seq, std::uint64_t> order;
    order.emplace(Seq{}, 1);
    for (const Seq& g : vertices) {
      if (g.empty() || !is_strictly_increasing(g))
        throw domain_error("stored vertex must be a non-empty ascending sequence");
      Seq s = g;
      s.pop_back();
      const auto s_it = order.find(s);
      if (s_it == order.end())
        throw domain_error("store is not successor-closed at " + format_seq(g));
      std::uint64_t o = s_it->second;
      if (std::optional<Seq> w = w_step(g)) {
        const auto w_it = order.find(*w);
        if (w_it == order.end())
          throw domain_error("store is not successor-closed at " + format_seq(g));
        o = checked_add(o, w_it->second);
      }
      if (given) {
        const auto g_it = given->find(g);
        if (g_it == given->end() || g_it->second != o)
          throw domain_error("stored order for " + format_seq(g) +
                             " contradicts the path-count recurrence");
      }
      order.emplace(g, o);
    }

    st.vertex_count_ = vertices.size() + 1;
    for (const Seq& g : vertices) {
      if (st.buckets_.empty() || st.buckets_.back().len != g.size() ||
          st.buckets_.back().last != g.back()) {
        Bucket b;
        b.last = g.back();
        b.len = static_cast<std::uint32_t>(g.size());
        st.buckets_.push_back(std::move(b));
      }
      Entry e;
      e.gamma = g;
      e.order = order.at(g);
      if (std::optional<Seq> w = w_step(g)) e.worder = order.at(*w);
      st.buckets_.back().entries.push_back(std::move(e));
      st.a_star_ = std::max<std::uint64_t>(st.a_star_, g.back());
      st.n_star_ = std::max<std::uint64_t>(st.n_star_, g.size());
    }

    if (st.a_star_ * st.n_star_ <= kMaxFlatTable) {
      st.table_.assign(st.a_star_ * st.n_star_, kNoBucket);
      for (std::size_t i = 0; i < st.buckets_.size(); ++i)
        st.table_[(st.buckets_[i].last - 1) * st.n_star_ + (st.buckets_[i].len - 1)] =
            static_cast<std::uint32_t>(i);
    } else {
      for (std::size_t i = 0; i < st.buckets_.size(); ++i)
        st.bucket_map_.emplace(std::make_pair(st.buckets_[i].last, st.buckets_[i].len),
                               static_cast<std::uint32_t>(i));
    }
    return st;
  }

  const Bucket* find_bucket(Val last, std::uint32_t len) const {
    if (!table_.empty()) {
      if (last == 0 || last > a_star_ || len == 0 || len > n_star_) return nullptr;
      const std::uint32_t id = table_[(last - 1) * n_star_ + (len - 1)];
      return id == kNoBucket ? nullptr : &buckets_[id];
    }
    const auto it = bucket_map_.find(std::make_pair(last, len));
    return it == bucket_map_.end() ? nullptr : &buckets_[it->second];
  }

  const Entry* find_entry(const Seq& gamma) const {
    if (gamma.empty()) return nullptr;
    const Bucket* b = find_bucket(gamma.back(), static_cast<std::uint32_t>(gamma.size()));
    if (!b) return nullptr;
    const auto it = std::lower_bound(
        b->entries.begin(), b->entries.end(), gamma,
        [](const Entry& e, const Seq& g) { return e.gamma < g; });
    if (it == b->entries.end() || it->gamma != gamma) return nullptr;
    return &*it;
  }

  static void check_dominated(const Seq& roofseq, const Seq& gamma) {
    if (gamma.size() != roofseq.size() || gamma.empty())
      throw domain_error("sequence length differs from roof length");
    if (!is_strictly_increasing(gamma))
      throw domain_error("sequence " + format_seq(gamma) + " is not strictly increasing");
    for (std::size_t i = 0; i < gamma.size(); ++i)
      if (gamma[i] > roofseq[i])
        throw domain_error("sequence " + format_seq(gamma) + " is not dominated by roof " +
                           format_seq(roofseq));
  }
};

}  // namespace phorma

#endif  // PHORMA_HFAMILY_HPP

#ifndef PHORMA_COMPOSITIONS_HPP
#define PHORMA_COMPOSITIONS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "phorma/boolexpr.hpp"
#include "phorma/error.hpp"
#include "phorma/seq.hpp"

namespace phorma {

// C(n,k) with checked 64-bit arithmetic; 0 when k > n.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n-k+i) stays exact: it is i * C(n-k+i, i).
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

// Number of n-compositions with m parts.
inline std::uint64_t comp_count(std::uint64_t n, std::uint64_t m) {
  if (m == 0 || m > n) return 0;
  return binomial(n - 1, m - 1);
}

inline bool is_composition(const Seq& d) {
  if (d.empty()) return false;
  for (Val p : d)
    if (p == 0) return false;
  return true;
}

inline std::uint64_t comp_sum(const Seq& d) {
  std::uint64_t s = 0;
  for (Val p : d) s = checked_add(s, p);
  return s;
}

// Rank of a composition among all with the same (sum, parts), in the order
// induced by edge labels of the composition walk: shrinking the first part
// ranks before closing it.  comp_unrank inverts.
inline std::uint64_t comp_rank(const Seq& d) {
  if (!is_composition(d)) throw domain_error("not a composition");
  std::uint64_t p = comp_sum(d);
  std::uint64_t q = d.size();
  std::uint64_t r = 0;
  std::size_t i = 0;
  std::uint64_t v = d[0];
  while (!(p == 1 && q == 1)) {
    if (v > 1) {
      --v;
      --p;
    } else {
      if (p > q) r = checked_add(r, binomial(p - 2, q - 1));
      --p;
      --q;
      ++i;
      v = d[i];
    }
  }
  return r;
}

inline Seq comp_unrank(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  const std::uint64_t total = comp_count(n, m);
  if (total == 0) throw domain_error("no compositions for the given (n, m)");
  if (r >= total) throw domain_error("composition rank out of range");
  Seq out;
  std::uint64_t p = n;
  std::uint64_t q = m;
  Val cur = 0;
  while (!(p == 1 && q == 1)) {
    if (q == 1) {
      ++cur;
      --p;
    } else {
      const std::uint64_t west = p > q ? binomial(p - 2, q - 1) : 0;
      if (r < west) {
        ++cur;
        --p;
      } else {
        r -= west;
        out.push_back(cur + 1);
        cur = 0;
        --p;
        --q;
      }
    }
  }
  out.push_back(cur + 1);
  return out;
}

// All compositions of n, lexicographic by parts: (1,1,..,1) first, (n) last.
template <class F>
inline void for_each_composition(std::uint32_t n, F&& f) {
  Seq parts;
  auto rec = [&](auto&& self, std::uint32_t rem) -> void {
    if (rem == 0) {
      f(static_cast<const Seq&>(parts));
      return;
    }
    for (std::uint32_t p = 1; p <= rem; ++p) {
      parts.push_back(p);
      self(self, rem - p);
      parts.pop_back();
    }
  };
  rec(rec, n);
}

// The composition constraint C: everything, an explicit list, or a boolean
// restriction over parts d1..dn (a literal naming a missing part is false).
class CompConstraint {
 public:
  enum class Kind : std::uint8_t { all, explicit_list, restricted };

  static CompConstraint all() { return CompConstraint{}; }

  static CompConstraint explicit_list(std::vector<Seq> list, std::uint32_t n) {
    for (const Seq& d : list) {
      if (!is_composition(d)) throw domain_error("explicit C entry is not a composition");
      if (comp_sum(d) != n)
        throw domain_error("explicit C entry " + format_seq(d) + " does not sum to " +
                           std::to_string(n));
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    CompConstraint c;
    c.kind_ = Kind::explicit_list;
    c.list_ = std::move(list);
    return c;
  }

  static CompConstraint restricted(BoolExpr expr) {
    CompConstraint c;
    c.kind_ = Kind::restricted;
    c.expr_ = std::move(expr);
    return c;
  }

  Kind kind() const { return kind_; }
  const std::vector<Seq>& list() const { return list_; }
  const BoolExpr& expr() const { return expr_; }

  bool admits(const Seq& occ) const {
    switch (kind_) {
      case Kind::all: return true;
      case Kind::explicit_list:
        return std::binary_search(list_.begin(), list_.end(), occ);
      case Kind::restricted: return expr_.eval_clipped(occ);
    }
    return false;
  }

  // Admitted compositions of n in lexicographic-by-parts order.
  template <class F>
  void for_each(std::uint32_t n, F&& f) const {
    switch (kind_) {
      case Kind::all:
        for_each_composition(n, f);
        break;
      case Kind::explicit_list:
        for (const Seq& d : list_) f(d);
        break;
      case Kind::restricted:
        for_each_composition(n, [&](const Seq& d) {
          if (expr_.eval_clipped(d)) f(d);
        });
        break;
    }
  }

  friend bool operator==(const CompConstraint& a, const CompConstraint& b) {
    return a.kind_ == b.kind_ && a.list_ == b.list_ && a.expr_ == b.expr_;
  }

 private:
  Kind kind_ = Kind::all;
  std::vector<Seq> list_;
  BoolExpr expr_ = BoolExpr::always_true('d');
};

inline std::vector<Seq> enum_comps(std::uint32_t n, const CompConstraint& c) {
  std::vector<Seq> out;
  c.for_each(n, [&](const Seq& d) { out.push_back(d); });
  return out;
}

}  // namespace phorma

#endif  // PHORMA_COMPOSITIONS_HPP

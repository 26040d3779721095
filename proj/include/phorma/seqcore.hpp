#ifndef PHORMA_SEQCORE_HPP
#define PHORMA_SEQCORE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phorma/boolexpr.hpp"
#include "phorma/compositions.hpp"
#include "phorma/error.hpp"
#include "phorma/seq.hpp"

namespace phorma {

// Strictly increasing sequence of the distinct values of alpha.
inline Seq sort_distinct(const Seq& alpha) {
  if (alpha.empty()) throw domain_error("sort_distinct of an empty sequence");
  Seq se = alpha;
  std::sort(se.begin(), se.end());
  se.erase(std::unique(se.begin(), se.end()), se.end());
  return se;
}

// Order type of alpha: the j-th smallest distinct value maps to j.
inline Seq reduce(const Seq& alpha) {
  if (alpha.empty()) throw domain_error("reduce of an empty sequence");
  const Seq se = sort_distinct(alpha);
  Seq beta(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const auto it = std::lower_bound(se.begin(), se.end(), alpha[i]);
    beta[i] = static_cast<Val>(it - se.begin()) + 1;
  }
  return beta;
}

// alpha_i = gamma_{beta_i}: inverse of (reduce, sort_distinct).
inline Seq recover(const Seq& beta, const Seq& gamma) {
  Val m = 0;
  for (Val b : beta)
    if (b > m) m = b;
  if (m != gamma.size())
    throw domain_error("recover: reduced sequence uses " + std::to_string(m) +
                       " values but ascending sequence has " +
                       std::to_string(gamma.size()));
  Seq alpha(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) alpha[i] = gamma[beta[i] - 1];
  return alpha;
}

// Occurrence vector: occ(alpha)_j = multiplicity of the j-th smallest value.
// Depends only on reduce(alpha).
inline Seq occ(const Seq& alpha) {
  const Seq beta = reduce(alpha);
  Val m = 0;
  for (Val b : beta)
    if (b > m) m = b;
  Seq d(m, 0);
  for (Val b : beta) ++d[b - 1];
  return d;
}

// Tightest ascending value ceiling for the class of beta under bounds a:
// the largest gamma such that every recover(beta, gamma' <= gamma) stays
// within a.  Built top value down; absent when the cascade dips below the
// minimal ascending sequence (1..m).
inline std::optional<Seq> roof(const Seq& beta, const Seq& a) {
  if (beta.size() != a.size())
    throw domain_error("roof: sequence length differs from bounds length");
  Val m = 0;
  for (Val b : beta)
    if (b > m) m = b;
  std::vector<std::int64_t> mins(m, -1);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const std::size_t v = beta[i] - 1;
    if (mins[v] < 0 || static_cast<std::int64_t>(a[i]) < mins[v])
      mins[v] = static_cast<std::int64_t>(a[i]);
  }
  Seq g(m);
  std::int64_t next = 0;
  for (std::size_t i = m; i-- > 0;) {
    std::int64_t gi = mins[i];
    if (i + 1 < m && next - 1 < gi) gi = next - 1;
    if (gi < static_cast<std::int64_t>(i) + 1) return std::nullopt;
    g[i] = static_cast<Val>(gi);
    next = gi;
  }
  return g;
}

// The order restriction B: a boolean function of the entries, or an explicit
// list of reduced sequences (alpha satisfies it iff reduce(alpha) is listed).
class OrderRestriction {
 public:
  static OrderRestriction expression(BoolExpr e) {
    OrderRestriction b;
    b.is_list_ = false;
    b.expr_ = std::move(e);
    return b;
  }

  static OrderRestriction reduced_list(std::vector<Seq> list, std::uint32_t n) {
    for (const Seq& beta : list) {
      if (beta.size() != n)
        throw domain_error("B-list entry " + format_seq(beta) + " is not of length " +
                           std::to_string(n));
      if (beta != reduce(beta))
        throw domain_error("B-list entry " + format_seq(beta) + " is not reduced");
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    OrderRestriction b;
    b.is_list_ = true;
    b.list_ = std::move(list);
    return b;
  }

  bool is_list() const { return is_list_; }
  const BoolExpr& expr() const { return expr_; }
  const std::vector<Seq>& list() const { return list_; }

  bool satisfied(const Seq& alpha) const {
    if (is_list_) return std::binary_search(list_.begin(), list_.end(), reduce(alpha));
    return expr_.eval(alpha);
  }

  friend bool operator==(const OrderRestriction& a, const OrderRestriction& b) {
    return a.is_list_ == b.is_list_ && a.expr_ == b.expr_ && a.list_ == b.list_;
  }

 private:
  bool is_list_ = false;
  BoolExpr expr_ = BoolExpr::always_true('a');
  std::vector<Seq> list_;
};

// The triple (a, B, C) describing A(a,B,C).
struct PhormaSpec {
  Seq bounds;
  OrderRestriction order = OrderRestriction::expression(BoolExpr::always_true('a'));
  CompConstraint comp = CompConstraint::all();

  std::uint32_t dim() const { return static_cast<std::uint32_t>(bounds.size()); }

  void validate() const {
    if (bounds.empty()) throw domain_error("bounds must be non-empty");
    for (Val b : bounds)
      if (b == 0) throw domain_error("bounds entries must be positive");
    if (!order.is_list() && order.expr().max_index() > dim())
      throw domain_error("order restriction references an entry beyond the dimension");
  }
};

// Membership in A(a,B,C); reports the first failed condition.
inline std::optional<member_fail> member_check(const PhormaSpec& spec, const Seq& alpha) {
  if (alpha.size() != spec.bounds.size()) return member_fail::length;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] == 0 || alpha[i] > spec.bounds[i]) return member_fail::bounds;
  if (!spec.order.satisfied(alpha)) return member_fail::order;
  if (spec.comp.kind() != CompConstraint::Kind::all && !spec.comp.admits(occ(alpha)))
    return member_fail::composition;
  return std::nullopt;
}

inline bool member(const PhormaSpec& spec, const Seq& alpha) {
  return !member_check(spec, alpha).has_value();
}

}  // namespace phorma

#endif  // PHORMA_SEQCORE_HPP

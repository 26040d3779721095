#ifndef PHORMA_REDGEN_HPP
#define PHORMA_REDGEN_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "phorma/error.hpp"
#include "phorma/seq.hpp"
#include "phorma/seqcore.hpp"

namespace phorma {

struct RedRoof {
  Seq beta;
  Seq roofseq;
};

struct GenOptions {
  bool prune_expr = true;      // cut subtrees whose partial evaluation is false
  bool prune_minbound = true;  // cut when a placed value already exceeds its bound room
};

// All reduced sequences with occurrence vector delta that satisfy B and have
// a feasible roof under the bounds, lexicographically sorted and paired with
// their roofs.  Depth-first over value choices 1..m per position; choosing
// values in ascending order makes emission order lexicographic.
inline std::vector<RedRoof> gen_reduced_for(const PhormaSpec& spec, const Seq& delta,
                                            const GenOptions& opt = {}) {
  const std::uint32_t n = spec.dim();
  if (!is_composition(delta) || comp_sum(delta) != n)
    throw domain_error("delta " + format_seq(delta) + " is not an n-composition");
  const std::size_t m = delta.size();
  std::vector<RedRoof> out;

  auto emit = [&](const Seq& beta) {
    if (std::optional<Seq> rf = roof(beta, spec.bounds))
      out.push_back(RedRoof{beta, std::move(*rf)});
  };

  if (spec.order.is_list()) {
    // The explicit reduced list is already sorted; filter by delta and roof.
    for (const Seq& beta : spec.order.list())
      if (occ(beta) == delta) emit(beta);
    return out;
  }

  const BoolExpr& expr = spec.order.expr();
  Seq prefix;
  prefix.reserve(n);
  Seq used(m, 0);
  std::vector<Val> min_bound(m, 0xffffffffu);

  auto rec = [&](auto&& self, std::uint32_t pos) -> void {
    if (pos == n) {
      if (expr.eval(prefix)) emit(prefix);
      return;
    }
    for (std::size_t v = 1; v <= m; ++v) {
      if (used[v - 1] == delta[v - 1]) continue;
      ++used[v - 1];
      prefix.push_back(static_cast<Val>(v));
      const Val saved = min_bound[v - 1];
      min_bound[v - 1] = std::min(saved, spec.bounds[pos]);
      // The roof's v-th entry never exceeds the smallest bound over the
      // positions holding v; below v it can only be infeasible.
      bool viable = !(opt.prune_minbound && min_bound[v - 1] < v);
      if (viable && opt.prune_expr && expr.eval_prefix(prefix) == Tri::False)
        viable = false;
      if (viable) self(self, pos + 1);
      min_bound[v - 1] = saved;
      prefix.pop_back();
      --used[v - 1];
    }
  };
  rec(rec, 0);
  return out;
}

// red A(a,B,C): union over admitted compositions, lexicographically sorted.
// Occurrence vectors are a function of the sequence, so the per-delta lists
// are disjoint; a duplicate would mean a generator defect.
inline std::vector<RedRoof> gen_reduced_all(const PhormaSpec& spec,
                                            const GenOptions& opt = {}) {
  std::vector<RedRoof> all;
  spec.comp.for_each(spec.dim(), [&](const Seq& delta) {
    std::vector<RedRoof> part = gen_reduced_for(spec, delta, opt);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  });
  std::sort(all.begin(), all.end(),
            [](const RedRoof& x, const RedRoof& y) { return x.beta < y.beta; });
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i - 1].beta == all[i].beta)
      throw error("duplicate reduced sequence across compositions");
  return all;
}

}  // namespace phorma

#endif  // PHORMA_REDGEN_HPP

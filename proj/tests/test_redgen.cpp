#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "phorma/redgen.hpp"
#include "phorma/builtins.hpp"
#include "testutil.hpp"

using namespace phorma;

namespace {

std::vector<std::pair<Seq, Seq>> flat(const std::vector<RedRoof>& rs) {
  std::vector<std::pair<Seq, Seq>> v;
  for (const RedRoof& r : rs) v.emplace_back(r.beta, r.roofseq);
  return v;
}

}  // namespace

TEST_CASE("single composition classes", "[redgen]") {
  const PhormaSpec spec = bl_spec(7, 5);

  const auto constant = gen_reduced_for(spec, Seq{4});
  CHECK(flat(constant) == std::vector<std::pair<Seq, Seq>>{{{1, 1, 1, 1}, {5}}});

  const auto alldistinct = gen_reduced_for(spec, Seq{1, 1, 1, 1});
  CHECK(flat(alldistinct) ==
        std::vector<std::pair<Seq, Seq>>{{{4, 2, 3, 1}, {4, 5, 6, 7}},
                                         {{4, 3, 1, 2}, {3, 4, 5, 7}},
                                         {{4, 3, 2, 1}, {3, 4, 5, 7}}});

  CHECK_THROWS_AS(gen_reduced_for(spec, Seq{3}), domain_error);
  CHECK_THROWS_AS(gen_reduced_for(spec, Seq{2, 0, 2}), domain_error);
}

TEST_CASE("infeasible roofs are filtered out", "[redgen]") {
  PhormaSpec tiny;
  tiny.bounds = Seq{1, 1};
  CHECK(gen_reduced_for(tiny, Seq{1, 1}).empty());
  const auto both = gen_reduced_all(tiny);
  CHECK(flat(both) == std::vector<std::pair<Seq, Seq>>{{{1, 1}, {1}}});
}

TEST_CASE("worked four-dimensional family classes", "[redgen]") {
  const auto all = gen_reduced_all(bl_spec(7, 5));
  CHECK(flat(all) == std::vector<std::pair<Seq, Seq>>{
                         {{1, 1, 1, 1}, {5}},
                         {{2, 1, 2, 1}, {5, 7}},
                         {{2, 2, 1, 1}, {4, 5}},
                         {{3, 2, 1, 1}, {4, 5, 7}},
                         {{3, 2, 2, 1}, {4, 5, 7}},
                         {{3, 3, 2, 1}, {3, 4, 5}},
                         {{4, 2, 3, 1}, {4, 5, 6, 7}},
                         {{4, 3, 1, 2}, {3, 4, 5, 7}},
                         {{4, 3, 2, 1}, {3, 4, 5, 7}}});
}

TEST_CASE("strict descending chain has a single class", "[redgen]") {
  const auto strict = gen_reduced_all(sym_spec(2, 9, true));
  CHECK(flat(strict) == std::vector<std::pair<Seq, Seq>>{{{2, 1}, {8, 9}}});
  for (std::uint32_t n = 2; n <= 9; ++n)
    CHECK(gen_reduced_all(sym_spec(n, 9, true)).size() == 1);
}

TEST_CASE("weak descending chain doubles per dimension", "[redgen]") {
  // Each reduced class corresponds to a choice of strict-vs-equal at every
  // adjacent pair: 2^(n-1) classes.
  for (std::uint32_t n = 2; n <= 9; ++n) {
    const auto all = gen_reduced_all(sym_spec(n, 9, false));
    CHECK(all.size() == (1ull << (n - 1)));
  }
}

TEST_CASE("seven-dimensional tiling family classes", "[redgen]") {
  const auto all = gen_reduced_all(tz_spec(Seq(7, 10)));
  CHECK(all.size() == 1134);
}

TEST_CASE("list-restricted generation follows the composition filter", "[redgen]") {
  PhormaSpec mini;
  mini.bounds = Seq{4, 3, 4};
  mini.order = OrderRestriction::reduced_list({{1, 1, 1}, {2, 1, 2}, {1, 2, 1}}, 3);
  mini.comp = CompConstraint::restricted(BoolExpr::parse("d1 >= d2", 3, 'd'));
  const auto all = gen_reduced_all(mini);
  CHECK(flat(all) == std::vector<std::pair<Seq, Seq>>{{{1, 2, 1}, {2, 3}}});
}

TEST_CASE("pruning never changes the result", "[redgen][prop]") {
  const std::vector<PhormaSpec> specs = {
      bl_spec(7, 5), sym_spec(4, 6, false), sym_spec(4, 6, true),
      tz_spec(Seq{5, 5, 6, 6, 7, 7, 7})};
  for (const PhormaSpec& spec : specs) {
    GenOptions none;
    none.prune_expr = false;
    none.prune_minbound = false;
    GenOptions only_expr = none;
    only_expr.prune_expr = true;
    GenOptions only_min = none;
    only_min.prune_minbound = true;
    const auto full = flat(gen_reduced_all(spec));
    CHECK(flat(gen_reduced_all(spec, none)) == full);
    CHECK(flat(gen_reduced_all(spec, only_expr)) == full);
    CHECK(flat(gen_reduced_all(spec, only_min)) == full);
  }
}

TEST_CASE("unrestricted generation counts position assignments", "[redgen][prop]") {
  // With no order restriction and roomy bounds, the classes with occurrence
  // vector delta are exactly the ways to deal n positions into |delta|
  // labelled groups of the given sizes.
  for (std::uint32_t n = 1; n <= 6; ++n) {
    PhormaSpec spec;
    spec.bounds = Seq(n, n);
    std::size_t total = 0;
    for_each_composition(n, [&](const Seq& delta) {
      const auto part = gen_reduced_for(spec, delta);
      CHECK(part.size() == testutil::multinomial(delta));
      std::set<Seq> distinct;
      for (std::size_t i = 0; i < part.size(); ++i) {
        const RedRoof& r = part[i];
        REQUIRE(occ(r.beta) == delta);
        REQUIRE(reduce(r.beta) == r.beta);
        REQUIRE(distinct.insert(r.beta).second);
        if (i) REQUIRE(part[i - 1].beta < r.beta);  // lexicographic emission
      }
      total += part.size();
    });
    // Fubini numbers: ordered set partitions of n positions.
    static const std::size_t fubini[] = {0, 1, 3, 13, 75, 541, 4683};
    CHECK(total == fubini[n]);
  }
}

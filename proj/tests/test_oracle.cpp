#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "phorma/oracle.hpp"
#include "phorma/builtins.hpp"
#include "testutil.hpp"

using namespace phorma;

TEST_CASE("exhaustive enumeration", "[oracle]") {
  PhormaSpec tiny;
  tiny.bounds = Seq{2, 2};
  tiny.order = OrderRestriction::expression(BoolExpr::parse("a1 > a2", 2, 'a'));
  CHECK(brute_enum(tiny) == std::vector<Seq>{{2, 1}});

  CHECK(brute_candidates(bl_spec(7, 5)) == 1225);
  const std::vector<Seq> l = brute_enum(bl_spec(7, 5));
  CHECK(l.size() == 190);
  CHECK(l.front() == Seq{1, 1, 1, 1});
  CHECK(l.back() == Seq{7, 5, 7, 5});

  CHECK(brute_enum(sym_spec(3, 9, false)).size() == 165);
}

TEST_CASE("oracle refuses oversized candidate spaces", "[oracle]") {
  CHECK_THROWS_AS(brute_enum(bl_spec(100, 50), 1000000), domain_error);
  CHECK_NOTHROW(brute_enum(bl_spec(7, 5), 1225));
  CHECK_THROWS_AS(brute_enum(bl_spec(7, 5), 1224), domain_error);
}

TEST_CASE("verification passes on known families", "[oracle]") {
  {
    const PhormaSpec spec = bl_spec(7, 5);
    const OracleReport rep = verify(spec, PhormaIndex::compile(spec), 100000000, "L(7,5)");
    CHECK(rep.ok());
    CHECK(rep.brute_count == 190);
    CHECK(rep.index_count == 190);
    CHECK(rep.set_equal);
    CHECK(rep.spec_id == "L(7,5)");
  }
  {
    const PhormaSpec spec = sym_spec(2, 9, true);
    const OracleReport rep = verify(spec, PhormaIndex::compile(spec));
    CHECK(rep.ok());
    CHECK(rep.brute_count == 36);
  }
}

TEST_CASE("verification of an empty family is trivially clean", "[oracle]") {
  PhormaSpec spec;
  spec.bounds = Seq{1, 1};
  spec.comp = CompConstraint::explicit_list({{1, 1}}, 2);
  const OracleReport rep = verify(spec, PhormaIndex::compile(spec));
  CHECK(rep.ok());
  CHECK(rep.brute_count == 0);
  CHECK(rep.index_count == 0);
}

TEST_CASE("randomized specs verify clean", "[oracle][prop]") {
  std::mt19937_64 rng(20250815);
  int done = 0;
  for (int iter = 0; done < 40; ++iter) {
    REQUIRE(iter < 400);  // generation must not stall
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform_below(rng, 3));
    PhormaSpec spec;
    for (std::uint32_t i = 0; i < n; ++i)
      spec.bounds.push_back(1 + static_cast<Val>(uniform_below(rng, 5)));
    spec.order = OrderRestriction::expression(
        BoolExpr::parse(testutil::random_expr_text(rng, n, 3, 'a'), n, 'a'));
    switch (uniform_below(rng, 3)) {
      case 0:
        break;
      case 1: {
        spec.comp = CompConstraint::restricted(
            BoolExpr::parse(testutil::random_expr_text(rng, n, 2, 'd'), n, 'd'));
        break;
      }
      default: {
        std::vector<Seq> keep;
        for_each_composition(n, [&](const Seq& d) {
          if (uniform_below(rng, 2)) keep.push_back(d);
        });
        if (keep.empty()) keep.push_back(Seq{static_cast<Val>(n)});
        spec.comp = CompConstraint::explicit_list(keep, n);
        break;
      }
    }
    const PhormaIndex idx = PhormaIndex::compile(spec);
    const OracleReport rep = verify(spec, idx);
    INFO("dim " << n << " bounds " << format_seq(spec.bounds) << " B "
                << spec.order.expr().to_string());
    REQUIRE(rep.ok());
    ++done;
  }
}

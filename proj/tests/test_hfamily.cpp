#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "phorma/hfamily.hpp"
#include "testutil.hpp"

using namespace phorma;

TEST_CASE("decrement successor", "[hfamily]") {
  CHECK(w_step(Seq{5, 6, 7, 9}) == Seq{5, 6, 7, 8});
  CHECK(w_step(Seq{4, 5, 6, 7}) == Seq{3, 4, 5, 6});
  CHECK(w_step(Seq{5}) == Seq{4});
  CHECK(w_step(Seq{2, 7}) == Seq{2, 6});
  CHECK_FALSE(w_step(Seq{1, 2, 3, 4}).has_value());
  CHECK_FALSE(w_step(Seq{1}).has_value());
  CHECK_THROWS_AS(w_step(Seq{}), domain_error);
}

TEST_CASE("shortening successor", "[hfamily]") {
  CHECK(s_step(Seq{5, 6, 7, 9}) == Seq{5, 6, 7});
  CHECK(s_step(Seq{5}) == Seq{});
  CHECK_FALSE(s_step(Seq{}).has_value());
}

TEST_CASE("closed-form fall equals iterated decrement", "[hfamily][prop]") {
  CHECK(w_fall(Seq{5, 6, 7, 9}, 0) == Seq{5, 6, 7, 9});
  CHECK(w_fall(Seq{5, 6, 7, 9}, 3) == Seq{3, 4, 5, 6});
  for (std::size_t m = 1; m <= 4; ++m) {
    for (const Seq& gamma : testutil::ascending_below(8, m)) {
      Seq cur = gamma;
      const Val depth = gamma.back() - static_cast<Val>(m);
      for (Val j = 0; j <= depth; ++j) {
        REQUIRE(w_fall(gamma, j) == cur);
        if (j < depth) cur = *w_step(cur);
      }
    }
  }
}

TEST_CASE("single-entry chain store", "[hfamily]") {
  const HVertexStore st = HVertexStore::build_store({Seq{5}});
  CHECK(st.vertex_count() == 6);  // (1)..(5) and the sink
  CHECK(st.seed_count() == 1);
  CHECK(st.seeds() == std::vector<Seq>{Seq{5}});
  for (Val v = 1; v <= 5; ++v) CHECK(st.order_of(Seq{v}) == v);
  CHECK(st.order_of(Seq{}) == 1);
  CHECK(st.worder_of(Seq{5}) == 4);
  CHECK(st.worder_of(Seq{1}) == 0);
  CHECK(st.h_rank(Seq{5}, Seq{5}) == 4);
  for (std::uint64_t r = 0; r < 5; ++r)
    CHECK(st.h_unrank(Seq{5}, r) == Seq{static_cast<Val>(r + 1)});
  CHECK_THROWS_AS(st.h_unrank(Seq{5}, 5), domain_error);
}

TEST_CASE("empty and sink-only stores", "[hfamily]") {
  const HVertexStore none = HVertexStore::build_store({});
  CHECK(none.vertex_count() == 1);
  CHECK(none.bucket_count() == 1);
  CHECK(none.max_bucket_size() == 0);
  CHECK(none.order_of(Seq{}) == 1);
  CHECK(none.contains(Seq{}));
  CHECK_FALSE(none.contains(Seq{1}));
  CHECK_THROWS_AS(none.order_of(Seq{1}), domain_error);
}

TEST_CASE("worked example store", "[hfamily]") {
  const HVertexStore st = HVertexStore::build_store({Seq{5, 6, 7, 9}});
  CHECK(st.vertex_count() == 22);
  CHECK(st.order_of(Seq{5, 6, 7, 9}) == 105);
  CHECK(st.order_of(Seq{4, 5, 6, 7}) == 35);
  CHECK(st.order_of(Seq{4, 5, 6}) == 20);
  CHECK(st.order_of(Seq{2, 3}) == 3);
  CHECK(st.order_of(Seq{2}) == 2);
  CHECK(st.order_of(Seq{}) == 1);

  CHECK(st.h_rank(Seq{5, 6, 7, 9}, Seq{3, 4, 7, 8}) == 60);
  CHECK(st.post_fall_orders(Seq{5, 6, 7, 9}, Seq{3, 4, 7, 8}) ==
        std::vector<std::uint64_t>{35, 20, 3, 2});
  CHECK(st.h_unrank(Seq{5, 6, 7, 9}, 60) == Seq{3, 4, 7, 8});

  CHECK(st.h_rank(Seq{5, 6, 7, 9}, Seq{1, 2, 3, 4}) == 0);
  CHECK(st.h_unrank(Seq{5, 6, 7, 9}, 0) == Seq{1, 2, 3, 4});
  CHECK(st.h_rank(Seq{5, 6, 7, 9}, Seq{5, 6, 7, 9}) == 104);
  CHECK(st.h_unrank(Seq{5, 6, 7, 9}, 104) == Seq{5, 6, 7, 9});
}

TEST_CASE("ranking rejects sequences outside the roof class", "[hfamily]") {
  const HVertexStore st = HVertexStore::build_store({Seq{5, 6, 7, 9}});
  CHECK_THROWS_AS(st.h_rank(Seq{5, 6, 7, 9}, Seq{3, 4, 7}), domain_error);
  CHECK_THROWS_AS(st.h_rank(Seq{5, 6, 7, 9}, Seq{3, 4, 8, 9}), domain_error);
  CHECK_THROWS_AS(st.h_rank(Seq{5, 6, 7, 9}, Seq{3, 3, 7, 8}), domain_error);
  CHECK_THROWS_AS(st.h_unrank(Seq{5, 6, 7, 9}, 105), domain_error);
  CHECK_THROWS_AS(st.h_unrank(Seq{}, 0), domain_error);
}

TEST_CASE("union store for the worked four-dimensional family", "[hfamily]") {
  // Roofs of the nine reduced classes under bounds (7,5,7,5).
  const std::vector<Seq> roofs = {{3, 4, 5}, {3, 4, 5, 7}, {4, 5},
                                  {4, 5, 6, 7}, {4, 5, 7}, {5}, {5, 7}};
  const HVertexStore st = HVertexStore::build_store(roofs);
  CHECK(st.vertex_count() == 22);
  CHECK(st.bucket_count() == 21);
  CHECK(st.max_bucket_size() == 2);
  CHECK(st.seed_count() == 4);
  CHECK(st.seeds() ==
        std::vector<Seq>{{3, 4, 5, 7}, {4, 5, 6, 7}, {4, 5, 7}, {5, 7}});
  // Every dropped roof still answers order queries through its successors.
  CHECK(st.roof_order(Seq{5}) == 5);
  CHECK(st.roof_order(Seq{4, 5}) == 10);
  CHECK(st.roof_order(Seq{3, 4, 5}) == 10);
  CHECK(st.roof_order(Seq{5, 7}) == 20);
  CHECK(st.roof_order(Seq{4, 5, 7}) == 30);
  CHECK(st.roof_order(Seq{3, 4, 5, 7}) == 25);
  CHECK(st.roof_order(Seq{4, 5, 6, 7}) == 35);
}

TEST_CASE("dropped single-entry roof is re-seeded only when uncovered", "[hfamily]") {
  // (5) alongside a store that already contains (4): no reseed, ranks still work.
  const HVertexStore covered = HVertexStore::build_store({Seq{5}, Seq{4, 5}});
  CHECK_FALSE(covered.contains(Seq{5}));
  CHECK(covered.contains(Seq{4}));
  CHECK(covered.roof_order(Seq{5}) == 5);
  CHECK(covered.h_rank(Seq{5}, Seq{3}) == 2);
  CHECK(covered.h_unrank(Seq{5}, 2) == Seq{3});
  for (std::uint64_t r = 0; r < 5; ++r)
    CHECK(covered.h_rank(Seq{5}, covered.h_unrank(Seq{5}, r)) == r);

  // (7) alongside an unrelated chain: (6) is uncovered, so (7) is re-seeded.
  const HVertexStore uncovered = HVertexStore::build_store({Seq{7}, Seq{2, 4}});
  CHECK(uncovered.contains(Seq{7}));
  CHECK(uncovered.roof_order(Seq{7}) == 7);
  const std::vector<Seq> expect_seeds = {{2, 4}, {7}};
  CHECK(uncovered.seeds() == expect_seeds);
}

TEST_CASE("order recurrence holds at every stored vertex", "[hfamily][prop]") {
  const HVertexStore st = HVertexStore::build_store(
      {Seq{3, 4, 5, 7}, Seq{4, 5, 6, 7}, Seq{4, 5, 7}, Seq{5, 7}});
  for (const HVertexStore::Bucket& b : st.buckets()) {
    for (const HVertexStore::Entry& e : b.entries) {
      CHECK(b.last == e.gamma.back());
      CHECK(b.len == e.gamma.size());
      std::uint64_t o = st.order_of(*s_step(e.gamma));
      if (const std::optional<Seq> w = w_step(e.gamma)) {
        CHECK(e.worder == st.order_of(*w));
        o += e.worder;
      } else {
        CHECK(e.worder == 0);
      }
      CHECK(e.order == o);
    }
  }
}

TEST_CASE("order splits exactly across fall depths", "[hfamily][prop]") {
  // order(gamma) counts one path per (fall depth, shortened continuation):
  // order(gamma) = sum over j of order(s(fall_j(gamma))).
  const HVertexStore st = HVertexStore::build_store({Seq{5, 6, 7, 9}});
  for (const HVertexStore::Bucket& b : st.buckets()) {
    for (const HVertexStore::Entry& e : b.entries) {
      const Val depth = e.gamma.back() - static_cast<Val>(e.gamma.size());
      std::uint64_t sum = 0;
      for (Val j = 0; j <= depth; ++j)
        sum += st.order_of(*s_step(w_fall(e.gamma, j)));
      CHECK(sum == e.order);
    }
  }
}

TEST_CASE("local hash is a bijection for every small roof", "[hfamily][prop]") {
  for (std::size_t m = 1; m <= 8; ++m) {
    for (const Seq& gamma : testutil::ascending_below(8, m)) {
      const HVertexStore st = HVertexStore::build_store({gamma});
      const std::vector<Seq> cls = testutil::dominated_by(gamma);
      REQUIRE(st.roof_order(gamma) == cls.size());
      std::set<std::uint64_t> ranks;
      for (const Seq& delta : cls) {
        const std::uint64_t r = st.h_rank(gamma, delta);
        REQUIRE(r < cls.size());
        REQUIRE(ranks.insert(r).second);
        REQUIRE(st.h_unrank(gamma, r) == delta);
      }
      REQUIRE(ranks.size() == cls.size());
    }
  }
}

TEST_CASE("rebuilding from serialized orders validates the recurrence", "[hfamily]") {
  const HVertexStore st = HVertexStore::build_store({Seq{4, 5, 7}});
  std::vector<std::pair<Seq, std::uint64_t>> flat;
  for (const HVertexStore::Bucket& b : st.buckets())
    for (const HVertexStore::Entry& e : b.entries) flat.emplace_back(e.gamma, e.order);

  const HVertexStore re = HVertexStore::from_serialized(flat, st.seeds());
  CHECK(re.vertex_count() == st.vertex_count());
  CHECK(re.order_of(Seq{4, 5, 7}) == st.order_of(Seq{4, 5, 7}));

  auto corrupt = flat;
  corrupt[0].second += 1;
  CHECK_THROWS_AS(HVertexStore::from_serialized(corrupt, st.seeds()), domain_error);

  auto missing = flat;
  missing.erase(std::remove_if(missing.begin(), missing.end(),
                               [](const auto& p) { return p.first == Seq{1}; }),
                missing.end());
  CHECK_THROWS_AS(HVertexStore::from_serialized(missing, st.seeds()), domain_error);
}

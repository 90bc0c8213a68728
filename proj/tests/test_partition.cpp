#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "symchar/partition.hpp"

using namespace symchar;

TEST_CASE("partition enumeration is canonical and complete") {
  auto p4 = partitions_of(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4[0] == Partition({4}));
  CHECK(p4[1] == Partition({3, 1}));
  CHECK(p4[2] == Partition({2, 2}));
  CHECK(p4[3] == Partition({2, 1, 1}));
  CHECK(p4[4] == Partition({1, 1, 1, 1}));
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(10).size() == 42);
  for (int n = 0; n <= 30; ++n)
    CHECK(Int((long)partitions_of(n).size()) == oracle::partition_count(n));
  // descending lexicographic, (n) first, (1^n) last
  auto p9 = partitions_of(9);
  for (size_t i = 0; i + 1 < p9.size(); ++i) CHECK(p9[i].parts() > p9[i + 1].parts());
  for (int n = 1; n <= 12; ++n) {
    auto ps = partitions_of(n);
    CHECK(ps.front() == Partition({n}));
    CHECK(ps.back().first() == 1);
    for (size_t i = 0; i < ps.size(); ++i) CHECK(partition_index(ps[i]) == (long)i);
  }
}

TEST_CASE("partition basics") {
  Partition l({5, 3, 3, 1});
  CHECK(l.weight() == 12);
  CHECK(l.norm() == 4);
  CHECK(l.first() == 5);
  CHECK(l.part(7) == 0);
  CHECK(l.conjugate() == Partition({4, 3, 3, 1, 1}));
  CHECK(l.conjugate().conjugate() == l);
  CHECK(l.durfee() == 3);
  CHECK(Partition().durfee() == 0);
  CHECK(l.contains(Partition({3, 3, 1})));
  CHECK_FALSE(l.contains(Partition({3, 3, 3, 3})));
  CHECK(l.without_first_row() == Partition({3, 3, 1}));
  CHECK(l.delta() == 12 - 5);
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({-1}), std::invalid_argument);
  CHECK(Partition({3, 0, 0}) == Partition({3}));
  for (int n = 0; n <= 14; ++n)
    for (const auto& p : partitions_of(n)) {
      CHECK(p.conjugate().conjugate() == p);
      int sq = p.durfee();
      CHECK((sq - 1) * sq <= n - p.first());
    }
}

TEST_CASE("hook lengths and hook products") {
  auto g = hook_grid(Partition({2, 1})).rows;
  REQUIRE(g.size() == 2);
  CHECK(g[0] == std::vector<int>{3, 1});
  CHECK(g[1] == std::vector<int>{1});
  // sum of hook lengths = sum over rows of (lambda_i + lambda'_i - ... ) sanity:
  // for any shape it equals n + 2*(number of pairs of cells in same row or column above/left)
  // cheap invariant: hooks of (n) are n, n-1, ..., 1
  auto gn = hook_grid(Partition({6})).rows;
  CHECK(gn[0] == std::vector<int>{6, 5, 4, 3, 2, 1});
  for (int n = 1; n <= 14; ++n)
    for (const auto& p : partitions_of(n)) {
      Int hp = hook_product(p);
      CHECK(hp > 0);
      Int f = factorial(n);
      CHECK(f % hp == 0);  // hook formula yields integer dimensions
      // conjugation preserves multiset of hooks
      CHECK(hook_product(p.conjugate()) == hp);
    }
  // dimension by hooks equals SYT count
  for (int n = 1; n <= 10; ++n)
    for (const auto& p : partitions_of(n))
      CHECK(exact_div(factorial(n), hook_product(p), "dim") == oracle::syt_count(p));
}

TEST_CASE("rim hook removal matches direct border-strip enumeration") {
  // worked instances
  auto r1 = rim_hooks(Partition({3, 1}), 1);
  REQUIRE(r1.size() == 2);
  auto r2 = rim_hooks(Partition({3, 1}), 2);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].rest == Partition({1, 1}));
  CHECK(r2[0].leg == 0);
  auto r4 = rim_hooks(Partition({3, 1}), 4);
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].rest == Partition());
  CHECK(r4[0].leg == 1);

  for (int n = 1; n <= 11; ++n)
    for (const auto& p : partitions_of(n))
      for (int k = 1; k <= n; ++k) {
        auto fast = rim_hooks(p, k);
        auto slow = oracle::border_strips(p, k);
        REQUIRE(fast.size() == slow.size());
        CHECK((int)fast.size() <= 2 * p.durfee());
        auto key = [](const RimHookRemoval& r) { return std::pair(r.rest.parts(), r.leg); };
        std::vector<std::pair<std::vector<int>, int>> a, b;
        for (auto& r : fast) a.push_back(key(r));
        for (auto& [rest, leg] : slow) b.push_back({rest.parts(), leg});
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
}

TEST_CASE("cycle types, centralizers, class sizes") {
  CycleType t(Partition({3, 1, 1}));
  CHECK(t.n() == 5);
  CHECK(t.cycles() == 3);
  CHECK(t.fixed_points() == 2);
  CHECK(t.multiplicity(1) == 2);
  CHECK(t.multiplicity(3) == 1);
  CHECK(t.multiplicity(2) == 0);
  CHECK(t.centralizer_order() == 6);  // 3 * 1!*2 for the fixed points: 3*2=6
  CHECK(t.class_size() == 20);
  CHECK(t.sign() == 1);
  CHECK(CycleType(Partition({2})).sign() == -1);
  CHECK(CycleType(Partition({2, 2})).sign() == 1);

  for (int n = 1; n <= 14; ++n) {
    Int total = 0;
    for (const auto& p : partitions_of(n)) {
      CycleType c(p);
      CHECK(c.class_size() * c.centralizer_order() == factorial(n));
      total += c.class_size();
    }
    CHECK(total == factorial(n));
  }

  // class sizes against brute enumeration
  for (int n = 1; n <= 6; ++n) {
    std::map<std::vector<int>, long> counts;
    for (const auto& w : oracle::all_perms(n)) counts[oracle::perm_cycle_type(w).parts()]++;
    for (const auto& p : partitions_of(n))
      CHECK(CycleType(p).class_size() == Int(counts[p.parts()]));
  }
}

TEST_CASE("partition ceiling guards resource use") {
  int old = partition_ceiling();
  set_partition_ceiling(20);
  CHECK_THROWS_AS(partitions_of(21), resource_error);
  CHECK_NOTHROW(partitions_of(20));
  set_partition_ceiling(old);
}

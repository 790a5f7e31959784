#include <catch2/catch_amalgamated.hpp>

#include "vinberg/classify.hpp"

using namespace vinberg;

TEST_CASE("regular elliptic orders, inner types") {
  auto get = [](Family f, int n) { return regular_elliptic_orders_inner(root_system(f, n)); };
  CHECK(get(Family::E, 6) == std::vector<Int>{12, 9, 6, 3});
  CHECK(get(Family::E, 7) == std::vector<Int>{18, 14, 6, 2});
  CHECK(get(Family::E, 8) == std::vector<Int>{30, 24, 20, 15, 12, 10, 8, 6, 5, 4, 3, 2});
  CHECK(get(Family::F, 4) == std::vector<Int>{12, 8, 6, 4, 3, 2});
  CHECK(get(Family::G, 2) == std::vector<Int>{6, 3, 2});
  CHECK(get(Family::B, 4) == std::vector<Int>{8, 4, 2});
  CHECK(get(Family::D, 5) == std::vector<Int>{8});
}

TEST_CASE("regular elliptic orders, twisted types") {
  const RootSystem& e6 = root_system(Family::E, 6);
  auto w2 = regular_elliptic_witnesses_twisted(e6, standard_twist(e6, 2));
  std::vector<Int> m2;
  for (auto& [m, w] : w2) m2.push_back(m);
  CHECK(m2 == std::vector<Int>{2, 4, 6, 12, 18});

  const RootSystem& d4 = root_system(Family::D, 4);
  auto w3 = regular_elliptic_witnesses_twisted(d4, standard_twist(d4, 3));
  std::vector<Int> m3;
  for (auto& [m, w] : w3) m3.push_back(m);
  CHECK(m3 == std::vector<Int>{3, 6, 12});
}

TEST_CASE("stable tables, exceptional spot checks") {
  auto e6 = stable_table(Family::E, 6, 1);
  REQUIRE(e6.size() == 4);
  CHECK(e6[0].m == 12);
  CHECK(e6[0].normalized == std::vector<Int>(7, 1));
  CHECK(e6[1].m == 9);
  CHECK(e6[1].normalized == std::vector<Int>{1, 1, 1, 1, 0, 1, 1});
  CHECK(e6[3].m == 3);
  CHECK(e6[3].normalized == std::vector<Int>{0, 0, 0, 0, 1, 0, 0});
  CHECK(e6[3].isotropy.s0_order == 9);  // mu_3 x mu_3

  auto te6 = stable_table(Family::E, 6, 2);
  REQUIRE(te6.size() == 5);
  CHECK(te6[0].m == 18);
  CHECK(te6[3].m == 4);
  CHECK(te6[3].normalized == std::vector<Int>{0, 0, 0, 1, 0});
  CHECK(te6[3].isotropy.det_value == 16);
  CHECK(te6[3].isotropy.s0_order == 16);
  CHECK(te6[3].isotropy.elementary_divisors == std::vector<Int>{1, 1, 1, 1, 4, 4});
  CHECK(te6[4].m == 2);
  CHECK(te6[4].isotropy.s0_order == 64);

  auto g2 = stable_table(Family::G, 2, 1);
  REQUIRE(g2.size() == 3);
  CHECK(g2[1].m == 3);
  CHECK(g2[1].normalized == std::vector<Int>{1, 1, 0});
  CHECK(g2[1].isotropy.s0_order == 3);
  CHECK(g2[2].normalized == std::vector<Int>{0, 1, 0});
  CHECK(g2[2].isotropy.s0_order == 4);

  auto d43 = stable_table(Family::D, 4, 3);
  REQUIRE(d43.size() == 3);
  CHECK(d43[1].m == 6);
  CHECK(d43[1].normalized == std::vector<Int>{1, 0, 1});
  CHECK(d43[2].normalized == std::vector<Int>{0, 0, 1});
  CHECK(d43[2].isotropy.s0_order == 9);
}

TEST_CASE("admissible classes in E6") {
  const RootSystem& e6 = root_system(Family::E, 6);
  auto m12 = admissible_elements(e6, 12);
  CHECK(m12.size() == 1);  // the Coxeter class
  CHECK(m12[0].rank == 1);

  auto m2 = admissible_elements(e6, 2);
  std::multiset<int> ranks;
  for (auto& c : m2) ranks.insert(c.rank);
  CHECK(ranks == std::multiset<int>{1, 2, 3, 4});

  auto m8 = admissible_elements(e6, 8);
  REQUIRE(m8.size() == 1);  // D5 Coxeter
  const TwistedAffineDiagram& tad = twisted_diagram(Family::E, 6, 1);
  auto canon_set = [&](std::vector<std::vector<Int>> raw) {
    std::set<std::vector<Int>> out;
    for (auto& v : raw) out.insert(canonicalize(KacVector{&tad, v}).s);
    return out;
  };
  auto k8 = kac_set(tad, m8[0]);
  CHECK(k8 == canon_set({{0, 1, 1, 1, 0, 1, 1}, {1, 1, 1, 0, 1, 0, 1}}));

  auto m5 = admissible_elements(e6, 5);
  REQUIRE(m5.size() == 1);  // A4
  auto k5 = kac_set(tad, m5[0]);
  CHECK(k5 == canon_set({{1, 0, 0, 1, 0, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {1, 1, 1, 0, 0, 0, 1}}));
}

TEST_CASE("positive rank table for E6") {
  auto table = positive_rank_table(Family::E, 6);
  std::map<Int, int> count;
  for (auto& r : table) count[r.m]++;
  CHECK(count == std::map<Int, int>{{12, 1}, {9, 1}, {8, 2}, {6, 5}, {5, 3}, {4, 5}, {3, 5}, {2, 2}, {1, 1}});
  const TwistedAffineDiagram& tad6 = twisted_diagram(Family::E, 6, 1);
  auto find = [&](Int m, std::vector<Int> kac) -> const GradingRecord& {
    auto canon = canonicalize(KacVector{&tad6, kac}).s;
    for (auto& r : table)
      if (r.m == m && r.kac == canon) return r;
    throw std::runtime_error("record not found");
  };
  // stable rows
  CHECK(find(12, {1, 1, 1, 1, 1, 1, 1}).rank == 1);
  CHECK(find(12, {1, 1, 1, 1, 1, 1, 1}).degrees == std::vector<Int>{12});
  CHECK(find(9, {1, 1, 1, 1, 0, 1, 1}).degrees == std::vector<Int>{9});
  // 6_a: G5 with degrees 6, 12
  CHECK(find(6, {1, 1, 0, 0, 1, 0, 1}).rank == 2);
  CHECK(find(6, {1, 1, 0, 0, 1, 0, 1}).degrees == std::vector<Int>{6, 12});
  // 3_a: G25 with degrees 6, 9, 12
  CHECK(find(3, {0, 0, 0, 0, 1, 0, 0}).rank == 3);
  CHECK(find(3, {0, 0, 0, 0, 1, 0, 0}).degrees == std::vector<Int>{6, 9, 12});
  CHECK(find(3, {0, 0, 0, 0, 1, 0, 0}).stable);
  CHECK(find(3, {0, 0, 0, 0, 1, 0, 0}).isotropy->s0_order == 9);
  // 2_a: W(F4), degrees 2, 6, 8, 12, rank 4
  CHECK(find(2, {0, 0, 1, 0, 0, 0, 0}).rank == 4);
  CHECK(find(2, {0, 0, 1, 0, 0, 0, 0}).degrees == std::vector<Int>{2, 6, 8, 12});
  // 2_b: W(B2), degrees 2, 4, rank 2
  CHECK(find(2, {0, 1, 0, 0, 0, 0, 1}).rank == 2);
  CHECK(find(2, {0, 1, 0, 0, 0, 0, 1}).degrees == std::vector<Int>{2, 4});
  // 3_b: G(3,1,2) degrees 3, 6
  CHECK(find(3, {1, 1, 0, 0, 0, 0, 1}).rank == 2);
  CHECK(find(3, {1, 1, 0, 0, 0, 0, 1}).degrees == std::vector<Int>{3, 6});
  // 4_a is stable-order-free (4 is not regular for E6) but rank 2 with G8
  CHECK(find(4, canonical_form(KacVector{&twisted_diagram(Family::E, 6, 1), {1, 0, 0, 0, 1, 0, 0}}).s).rank == 2);
  CHECK(find(4, canonical_form(KacVector{&twisted_diagram(Family::E, 6, 1), {1, 0, 0, 0, 1, 0, 0}}).s).degrees ==
        std::vector<Int>{8, 12});
  // 1_a
  CHECK(find(1, {1, 0, 0, 0, 0, 0, 0}).rank == 6);
  CHECK(find(1, {1, 0, 0, 0, 0, 0, 0}).degrees == std::vector<Int>{2, 5, 6, 8, 9, 12});
}

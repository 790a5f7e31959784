#include <catch2/catch_amalgamated.hpp>

#include "vinberg/outer.hpp"

using namespace vinberg;

TEST_CASE("bridge data") {
  const OuterBridge& b = OuterBridge::get();
  const RootSystem& e7 = *b.e7;
  // pairwise orthogonal roots whose coroots sum to twice the minuscule coweight
  for (size_t i = 0; i < 3; ++i) {
    REQUIRE(e7.is_root(b.gamma[i]));
    for (size_t j = i + 1; j < 3; ++j)
      CHECK(e7.pairing(b.gamma[i], e7.coroots[e7.root_index(b.gamma[j])]) == 0);
  }
  Vec sum(7, 0);
  for (auto& g : b.gamma) sum = sum + e7.coroots[size_t(e7.root_index(g))];
  // 2 * omega_7-check: pairs to 2*delta_{j7} against the simple roots
  for (int i = 0; i < 7; ++i) {
    Vec e(7, 0);
    e[i] = 1;
    CHECK(e7.pairing(e, sum) == (i == 6 ? 2 : 0));
  }
  // the product of the three reflections acts as the affine diagram flip
  auto d = decompose_automorphism(e7, b.theta);
  REQUIRE(d.has_value());
  CHECK(d->diagram_perm == std::vector<int>{5, 1, 4, 3, 2, 0, 6});
  CHECK(element_order({&e7, b.theta}) == 2);
}

TEST_CASE("minus test") {
  const RootSystem& e7 = root_system(Family::E, 7);
  Mat minusI(7, 7);
  for (int i = 0; i < 7; ++i) minusI(i, i) = -1;
  CHECK(minus_we6_test(minusI));
  CHECK_FALSE(minus_we6_test(Mat::identity(7)));
  // a Coxeter element class representative acts by -1 on the minuscule line
  bool coxeter_found = false;
  for (auto& oc : outer_classes())
    if (oc.m == 18) coxeter_found = true;
  CHECK(coxeter_found);
}

TEST_CASE("restriction round trip") {
  std::vector<Int> sym{1, 0, 1, 0, 1, 0, 0, 1};
  auto t = restrict_symmetric(sym);
  CHECK(t == std::vector<Int>{1, 0, 0, 1, 1});
  CHECK(symmetrize_to_e7(t) == sym);
  CHECK_THROWS(restrict_symmetric(std::vector<Int>{1, 0, 0, 0, 0, 0, 0, 0}));
  // both sides report the same order
  const TwistedAffineDiagram& tad7 = twisted_diagram(Family::E, 7, 1);
  const TwistedAffineDiagram& tad2 = twisted_diagram(Family::E, 6, 2);
  CHECK(vector_order(KacVector{&tad7, sym}) == vector_order(KacVector{&tad2, t}));
}

TEST_CASE("pinned involutions restrict to the known order-two rows") {
  // theta: symmetric diagram (1,0,0,0,0,0,0,1) -> 1 0 0 <= 0 0, rank 2
  // theta_0: (0,0,1,0,0,0,0,0) -> 0 0 0 <= 0 1, rank 6
  auto table = outer_table();
  auto find = [&](std::vector<Int> kac) -> const OuterRecord& {
    for (auto& r : table.records)
      if (r.kac == kac) return r;
    throw std::runtime_error("row not found");
  };
  CHECK(find({1, 0, 0, 0, 0}).m == 2);
  CHECK(find({1, 0, 0, 0, 0}).rank == 2);
  CHECK(find({0, 0, 0, 0, 1}).rank == 6);
  CHECK(find({1, 1, 1, 1, 1}).m == 18);
  CHECK(find({1, 1, 1, 1, 1}).rank == 1);
  CHECK(find({1, 1, 1, 1, 1}).degrees == std::vector<Int>{9});
  CHECK(find({1, 0, 0, 1, 0}).degrees == std::vector<Int>{6, 9, 12});
  CHECK(table.records.size() == 17);
  CHECK(table.excluded.size() == 3);
}

TEST_CASE("ranks agree on the sublattice and the full lattice for m > 2") {
  for (auto& oc : outer_classes()) {
    if (oc.rank == 0 || oc.m <= 2) continue;
    WeylAutomorphism w{&root_system(Family::E, 7), oc.rep};
    CHECK(cyclotomic_rank(w, oc.m) == oc.rank);
  }
}

TEST_CASE("the minus coset has the size of the smaller Weyl group") {
  // exercised inside outer_classes(), which throws on any size mismatch
  CHECK(outer_classes().size() > 0);
}

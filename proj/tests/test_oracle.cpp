#include <catch2/catch_amalgamated.hpp>

#include "vinberg/chevalley.hpp"

using namespace vinberg;

TEST_CASE("algebra dimensions and the Jacobi identity") {
  struct Row { Family f; int n; int dim; };
  for (auto [f, n, dim] : std::vector<Row>{{Family::A, 1, 3},
                                           {Family::A, 2, 8},
                                           {Family::A, 3, 15},
                                           {Family::B, 2, 10},
                                           {Family::B, 3, 21},
                                           {Family::C, 3, 21},
                                           {Family::D, 4, 28},
                                           {Family::G, 2, 14},
                                           {Family::F, 4, 52}}) {
    auto alg = chevalley_algebra(f, n);
    INFO(alg.type.str());
    CHECK(alg.dim == dim);
    CHECK(jacobi_holds(alg));
  }
  CHECK_THROWS_AS(chevalley_algebra(Family::D, 5), std::invalid_argument);
  CHECK_THROWS_AS(chevalley_algebra(Family::E, 6), std::invalid_argument);
}

TEST_CASE("sl2 inside every algebra") {
  auto alg = chevalley_algebra(Family::A, 1);
  // [e, f] = +-h and [h, e] = 2e
  auto& ef = alg.bracket[size_t(alg.root_index(0))][size_t(alg.root_index(1))];
  REQUIRE(ef.size() == 1);
  CHECK(ef[0].first == alg.cartan_index(0));
  auto& he = alg.bracket[size_t(alg.cartan_index(0))][size_t(alg.root_index(0))];
  REQUIRE(he.size() == 1);
  CHECK(std::llabs(he[0].second) == 2);
}

TEST_CASE("gradings respect brackets") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::A, 2}, {Family::B, 2}, {Family::G, 2}}) {
    auto alg = chevalley_algebra(f, n);
    const TwistedAffineDiagram& tad = twisted_diagram(f, n, 1);
    for (auto& v : canonical_diagrams(tad, 3)) {
      auto g = grade_by_kac(alg, v);
      for (int i = 0; i < alg.dim; ++i)
        for (int j = 0; j < alg.dim; ++j)
          for (auto& [k, c] : alg.bracket[size_t(i)][size_t(j)]) {
            INFO(alg.type.str());
            CHECK((g.degree[size_t(i)] + g.degree[size_t(j)]) % g.m == g.degree[size_t(k)]);
          }
    }
  }
}

TEST_CASE("numeric ranks on reference gradings") {
  auto a1 = chevalley_algebra(Family::A, 1);
  const TwistedAffineDiagram& t1 = twisted_diagram(Family::A, 1, 1);
  auto g1 = grade_by_kac(a1, KacVector{&t1, {1, 1}});
  CHECK(graded_dim(g1, 1) == 2);
  CHECK(numeric_rank(g1, 20) == 1);

  auto g2alg = chevalley_algebra(Family::G, 2);
  const TwistedAffineDiagram& tg = twisted_diagram(Family::G, 2, 1);
  auto gg = grade_by_kac(g2alg, KacVector{&tg, {1, 1, 1}});
  CHECK(numeric_rank(gg, 20) == 1);  // Coxeter gradings are stable of rank 1

  auto a2 = chevalley_algebra(Family::A, 2);
  const TwistedAffineDiagram& ta = twisted_diagram(Family::A, 2, 1);
  auto ga = grade_by_kac(a2, KacVector{&ta, {1, 1, 1}});
  CHECK(graded_dim(ga, 1) == 3);
  CHECK(numeric_rank(ga, 20) == 1);

  // rank is monotone nondecreasing in the number of samples
  CHECK(numeric_rank(gg, 1) >= numeric_rank(gg, 20));
}

TEST_CASE("coxeter gradings are rank one for every supported type") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{
           {Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::B, 3}, {Family::G, 2}}) {
    auto alg = chevalley_algebra(f, n);
    const TwistedAffineDiagram& tad = twisted_diagram(f, n, 1);
    auto g = grade_by_kac(alg, principal_kac(tad, tad.h_twisted));
    INFO(alg.type.str());
    CHECK(numeric_rank(g, 20) == 1);
  }
}

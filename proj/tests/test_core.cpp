#include <catch2/catch_amalgamated.hpp>

#include "vinberg/kac.hpp"
#include "vinberg/twisted.hpp"
#include "vinberg/weyl.hpp"

using namespace vinberg;

TEST_CASE("cyclotomic polynomials and factorization") {
  CHECK(cyclotomic(1).c == std::vector<Int>{-1, 1});
  CHECK(cyclotomic(2).c == std::vector<Int>{1, 1});
  CHECK(cyclotomic(6).c == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic(12).c == std::vector<Int>{1, 0, -1, 0, 1});
  // t^6 - 1 = product of Phi_d over d | 6
  Poly p({-1, 0, 0, 0, 0, 0, 1});
  auto f = cyclotomic_factor(p, 6);
  CHECK(f == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {6, 1}});
}

TEST_CASE("smith normal form") {
  Mat m(2, 2);
  m(0, 0) = 2; m(0, 1) = 4;
  m(1, 0) = 6; m(1, 1) = 8;
  auto d = smith_normal_form(m);
  CHECK(d == std::vector<Int>{2, 4});  // det 16 - 24 = -8 = 2*4
}

TEST_CASE("root counts by reflection closure") {
  struct Row { Family f; int n; size_t count; };
  for (auto [f, n, count] : std::vector<Row>{{Family::A, 1, 2},
                                             {Family::A, 4, 20},
                                             {Family::B, 4, 32},
                                             {Family::C, 3, 18},
                                             {Family::D, 5, 40},
                                             {Family::G, 2, 12},
                                             {Family::F, 4, 48},
                                             {Family::E, 6, 72},
                                             {Family::E, 7, 126},
                                             {Family::E, 8, 240}}) {
    const RootSystem& rs = root_system(f, n);
    INFO(rs.type.str());
    CHECK(rs.roots.size() == count);
    CHECK(rs.positive.size() == count / 2);
    // R = -R, pairing values constrained
    for (const Vec& r : rs.roots) {
      REQUIRE(rs.is_root(-r));
      Int p = rs.pairing(r, rs.coroots[rs.root_index(r)]);
      CHECK(p == 2);
    }
    // <alpha_i, rho-check> = 1
    for (int i = 0; i < n; ++i) {
      Rat v(0);
      for (int k = 0; k < n; ++k) v = v + rs.rho_check[k] * Rat(rs.cartan(k, i));
      CHECK(v == Rat(1));
    }
  }
}

TEST_CASE("degrees and exponents") {
  CHECK(root_system(Family::A, 1).degrees == std::vector<Int>{2});
  CHECK(root_system(Family::E, 6).degrees == std::vector<Int>{2, 5, 6, 8, 9, 12});
  CHECK(root_system(Family::E, 7).degrees == std::vector<Int>{2, 6, 8, 10, 12, 14, 18});
  CHECK(root_system(Family::E, 8).degrees == std::vector<Int>{2, 8, 12, 14, 18, 20, 24, 30});
  CHECK(root_system(Family::F, 4).degrees == std::vector<Int>{2, 6, 8, 12});
  CHECK(root_system(Family::G, 2).degrees == std::vector<Int>{2, 6});
  // sum of exponents = number of positive roots
  for (Family f : {Family::E, Family::F}) {
    const RootSystem& rs = root_system(f, f == Family::F ? 4 : 8);
    Int s = 0;
    for (Int e : rs.exponents) s += e;
    CHECK(size_t(s) == rs.positive.size());
  }
}

TEST_CASE("product of degrees equals the group order (orbit count)") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{
           {Family::A, 3}, {Family::B, 3}, {Family::G, 2}, {Family::F, 4}, {Family::D, 4}, {Family::E, 6}}) {
    const RootSystem& rs = root_system(f, n);
    Int count = 0;
    enumerate_coset(rs, Mat::identity(n), default_enumeration_bound(), [&](const Mat&) { ++count; });
    CHECK(count == weyl_order(f, n));
  }
}

TEST_CASE("pairing examples") {
  const RootSystem& g2 = root_system(Family::G, 2);
  // long simple against short coroot, orientation fixed by the Cartan matrix
  Vec a2(2, 0);
  a2[1] = 1;
  CHECK(g2.simple_pairing(a2, 0) == -3);
  const RootSystem& e8 = root_system(Family::E, 8);
  CHECK(e8.height(e8.roots[e8.highest]) == 29);  // h - 1
}

TEST_CASE("levi subsystems") {
  const RootSystem& e7 = root_system(Family::E, 7);
  // six nodes spanning E6 inside E7 (Bourbaki 1..6)
  auto comps = levi_subsystem(e7, {0, 1, 2, 3, 4, 5});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].type.str() == "E6");
  CHECK(comps[0].ambient_roots.size() == 72);
  // single node: A1
  auto a1 = levi_subsystem(e7, {3});
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].type.str() == "A1");
}

TEST_CASE("reflections and element orders") {
  const RootSystem& a2 = root_system(Family::A, 2);
  Vec alpha1{1, 0}, alpha2{0, 1};
  auto s1 = reflection(a2, alpha1);
  CHECK(s1.matrix.apply(alpha1) == Vec{-1, 0});
  CHECK(s1.matrix.apply(alpha2) == Vec{1, 1});
  CHECK(mat_pow(s1.matrix, 2) == Mat::identity(2));
  CHECK(element_order(s1) == 2);

  const RootSystem& e8 = root_system(Family::E, 8);
  Mat cox = Mat::identity(8);
  for (int i = 0; i < 8; ++i) cox = cox * simple_reflection(e8, i).matrix;
  CHECK(element_order({&e8, cox}) == 30);
  CHECK(cyclotomic_rank({&e8, cox}, 30) == 1);
  CHECK(is_elliptic({&e8, cox}));
  CHECK(is_z_regular({&e8, cox}));
}

TEST_CASE("ellipticity and regularity edge cases") {
  const RootSystem& e6 = root_system(Family::E, 6);
  auto theta = standard_twist(e6, 2);
  WeylAutomorphism t{&e6, theta.matrix};
  CHECK(element_order(t) == 2);
  CHECK_FALSE(is_elliptic(t));    // fixes rho-check
  CHECK_FALSE(is_z_regular(t));   // fixes the highest root
  CHECK_FALSE(is_z_regular(identity_automorphism(e6)));

  const RootSystem& e7 = root_system(Family::E, 7);
  WeylAutomorphism minus1{&e7, Mat(7, 7)};
  for (int i = 0; i < 7; ++i) minus1.matrix(i, i) = -1;
  CHECK(minus1.valid());
  CHECK(element_order(minus1) == 2);
  CHECK(is_elliptic(minus1));
}

TEST_CASE("coxeter element of E6: eigenvalue structure") {
  const RootSystem& e6 = root_system(Family::E, 6);
  Mat cox = Mat::identity(6);
  for (int i = 0; i < 6; ++i) cox = cox * simple_reflection(e6, i).matrix;
  auto f = cyclotomic_factor(char_poly(cox), 12);
  // exponents 1,4,5,7,8,11 mod 12: orders 12,3,12,12,3,12
  CHECK(f == std::map<int, int>{{3, 1}, {12, 1}});
  CHECK(cyclotomic_rank({&e6, cox}, 12) == 1);
}

TEST_CASE("fingerprints are conjugation invariant (spot)") {
  const RootSystem& d4 = root_system(Family::D, 4);
  Mat w = Mat::identity(4);
  for (int i = 0; i < 4; ++i) w = w * simple_reflection(d4, i).matrix;
  auto f1 = fingerprint({&d4, w});
  for (int i = 0; i < 4; ++i) {
    Mat s = simple_reflection(d4, i).matrix;
    CHECK(fingerprint({&d4, s * w * s}) == f1);
  }
}

TEST_CASE("automorphism decomposition") {
  const RootSystem& e6 = root_system(Family::E, 6);
  auto theta = standard_twist(e6, 2);
  CHECK_FALSE(in_weyl_group(e6, theta.matrix));
  Mat w = simple_reflection(e6, 2).matrix * simple_reflection(e6, 5).matrix;
  CHECK(in_weyl_group(e6, w));
  CHECK_FALSE(in_weyl_group(e6, theta.matrix * w));
  auto d = decompose_automorphism(e6, theta.matrix * w);
  REQUIRE(d.has_value());
  CHECK(d->diagram_perm == theta.node_perm);
}

TEST_CASE("elliptic classes of E6 by enumeration") {
  const RootSystem& e6 = root_system(Family::E, 6);
  auto classes = elliptic_classes(e6, identity_pin(e6), ClassStrategy::Enumeration);
  CHECK(classes.size() == 5);  // E6, E6(a1), E6(a2), A5+A1, 3A2
  std::multiset<Int> orders;
  for (auto& c : classes) orders.insert(c.print.order);
  CHECK(orders == std::multiset<Int>{3, 6, 6, 9, 12});
}

TEST_CASE("elliptic classes of A2") {
  const RootSystem& a2 = root_system(Family::A, 2);
  auto classes = elliptic_classes(a2, identity_pin(a2), ClassStrategy::Enumeration);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].print.order == 3);
}

TEST_CASE("two-involution search matches enumeration on E6 and D4") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::D, 4}, {Family::E, 6}}) {
    const RootSystem& rs = root_system(f, n);
    auto a = elliptic_classes_enumeration(rs, Mat::identity(n), default_enumeration_bound());
    auto b = elliptic_classes_carter(rs);
    std::set<ConjugacyFingerprint> pa, pb;
    for (auto& c : a) pa.insert(c.print);
    for (auto& c : b) pb.insert(c.print);
    INFO(rs.type.str());
    CHECK(pa == pb);
  }
}

TEST_CASE("centralizer orders") {
  const RootSystem& a2 = root_system(Family::A, 2);
  Mat cox = simple_reflection(a2, 0).matrix * simple_reflection(a2, 1).matrix;
  CHECK(centralizer_order(a2, {&a2, cox}) == 3);
  const RootSystem& e6 = root_system(Family::E, 6);
  Mat ce6 = Mat::identity(6);
  for (int i = 0; i < 6; ++i) ce6 = ce6 * simple_reflection(e6, i).matrix;
  // regular elliptic path: degrees divisible by 12 -> {12}
  CHECK(centralizer_order(e6, {&e6, ce6}) == 12);
}

TEST_CASE("isotropy invariants") {
  const RootSystem& e8 = root_system(Family::E, 8);
  WeylAutomorphism minus1{&e8, Mat(8, 8)};
  for (int i = 0; i < 8; ++i) minus1.matrix(i, i) = -1;
  auto inv = isotropy_invariants(minus1, 1);
  CHECK(inv.det_value == 256);
  CHECK(inv.elementary_divisors == std::vector<Int>(8, 2));
  CHECK(inv.s0_order == 256);
}

TEST_CASE("twisted affine diagrams match the classification table") {
  struct Row {
    Family f;
    int n, e, ell;
    std::vector<Int> marks;
    Int h;
    size_t omega;
  };
  std::vector<Row> rows = {
      {Family::A, 2, 2, 1, {1, 2}, 6, 1},
      {Family::A, 4, 2, 2, {1, 2, 2}, 10, 1},
      {Family::A, 6, 2, 3, {1, 2, 2, 2}, 14, 1},
      {Family::A, 8, 2, 4, {1, 2, 2, 2, 2}, 18, 1},
      {Family::A, 3, 2, 2, {1, 1, 1}, 6, 2},
      {Family::A, 5, 2, 3, {1, 1, 2, 1}, 10, 2},
      {Family::A, 7, 2, 4, {1, 1, 2, 2, 1}, 14, 2},
      {Family::D, 4, 2, 3, {1, 1, 1, 1}, 8, 2},
      {Family::D, 5, 2, 4, {1, 1, 1, 1, 1}, 10, 2},
      {Family::D, 6, 2, 5, {1, 1, 1, 1, 1, 1}, 12, 2},
      {Family::D, 7, 2, 6, {1, 1, 1, 1, 1, 1, 1}, 14, 2},
      {Family::D, 8, 2, 7, {1, 1, 1, 1, 1, 1, 1, 1}, 16, 2},
      {Family::D, 4, 3, 2, {1, 2, 1}, 12, 1},
      {Family::E, 6, 2, 4, {1, 2, 3, 2, 1}, 18, 1},
  };
  for (auto& r : rows) {
    const TwistedAffineDiagram& tad = twisted_diagram(r.f, r.n, r.e);
    INFO(tad.type_string());
    CHECK(tad.ell == r.ell);
    CHECK(tad.marks == r.marks);
    CHECK(tad.h_twisted == r.h);
    CHECK(tad.omega.size() == r.omega);
    // generalized Cartan of affine type: diagonal 2, off-diagonal <= 0,
    // kernel spanned by the marks
    int N = int(tad.nodes.size());
    for (int i = 0; i < N; ++i) {
      CHECK(tad.affine_cartan(i, i) == 2);
      Int k = 0;
      for (int j = 0; j < N; ++j) {
        if (i != j) CHECK(tad.affine_cartan(i, j) <= 0);
        k += tad.affine_cartan(j, i) * tad.marks[j];
      }
      CHECK(k == 0);  // marks span the kernel of the transposed pairings
    }
  }
}

TEST_CASE("untwisted affine diagrams reproduce the classical marks") {
  const TwistedAffineDiagram& e8 = twisted_diagram(Family::E, 8, 1);
  CHECK(e8.marks == std::vector<Int>{1, 2, 3, 4, 6, 5, 4, 3, 2});
  CHECK(e8.h_twisted == 30);
  CHECK(e8.omega.size() == 1);
  const TwistedAffineDiagram& e7 = twisted_diagram(Family::E, 7, 1);
  CHECK(e7.marks == std::vector<Int>{1, 2, 2, 3, 4, 3, 2, 1});
  CHECK(e7.h_twisted == 18);
  CHECK(e7.omega.size() == 2);
  const TwistedAffineDiagram& e6 = twisted_diagram(Family::E, 6, 1);
  CHECK(e6.marks == std::vector<Int>{1, 1, 2, 2, 3, 2, 1});
  CHECK(e6.h_twisted == 12);
  CHECK(e6.omega.size() == 3);
  const TwistedAffineDiagram& g2 = twisted_diagram(Family::G, 2, 1);
  CHECK(g2.marks == std::vector<Int>{1, 2, 3});
  CHECK(g2.h_twisted == 6);
  const TwistedAffineDiagram& f4 = twisted_diagram(Family::F, 4, 1);
  CHECK(f4.marks == std::vector<Int>{1, 2, 3, 4, 2});
  const TwistedAffineDiagram& a1 = twisted_diagram(Family::A, 1, 1);
  CHECK(a1.marks == std::vector<Int>{1, 1});
  CHECK(a1.h_twisted == 2);
  const TwistedAffineDiagram& b4 = twisted_diagram(Family::B, 4, 1);
  CHECK(b4.marks == std::vector<Int>{1, 1, 2, 2, 2});
  const TwistedAffineDiagram& c4 = twisted_diagram(Family::C, 4, 1);
  CHECK(c4.marks == std::vector<Int>{1, 2, 2, 2, 1});
  const TwistedAffineDiagram& d5 = twisted_diagram(Family::D, 5, 1);
  CHECK(d5.marks == std::vector<Int>{1, 1, 2, 2, 1, 1});
  CHECK(d5.omega.size() == 4);
}

TEST_CASE("kac vectors: order, reflections, normalization") {
  const TwistedAffineDiagram& e7 = twisted_diagram(Family::E, 7, 1);
  KacVector ones{&e7, std::vector<Int>(8, 1)};
  CHECK(vector_order(ones) == 18);

  const TwistedAffineDiagram& te6 = twisted_diagram(Family::E, 6, 2);
  KacVector v{&te6, {-2, 1, 1, 1, 1}};
  CHECK(vector_order(v) == 12);
  auto [norm, transcript] = normalize(v);
  CHECK(vector_order(norm) == 12);
  CHECK(is_normalized(norm));
  CHECK(norm.s == std::vector<Int>{1, 1, 0, 1, 1});
  // transcript replays to the input
  KacVector replay = norm;
  for (auto it = transcript.rbegin(); it != transcript.rend(); ++it) replay = reflect_at(replay, *it);
  CHECK(replay == v);

  KacVector m6{&te6, {-5, 1, 1, 1, 1}};
  CHECK(vector_order(m6) == 6);
  CHECK(normalize(m6).first.s == std::vector<Int>{1, 0, 0, 1, 0});

  // already-normalized input: unchanged, empty transcript
  auto [same, empty] = normalize(norm);
  CHECK(same == norm);
  CHECK(empty.empty());

  // involution and wall-fixing
  KacVector w{&e7, {3, 0, 1, 0, 2, 0, 1, 1}};
  CHECK(reflect_at(w, 1) == w);
  CHECK(reflect_at(reflect_at(w, 4), 4) == w);
  CHECK(vector_order(reflect_at(w, 4)) == vector_order(w));
}

TEST_CASE("principal vectors") {
  const TwistedAffineDiagram& e8 = twisted_diagram(Family::E, 8, 1);
  CHECK(principal_kac(e8, 30).s == std::vector<Int>(9, 1));
  auto p8 = principal_kac(e8, 8);
  CHECK(p8.s == std::vector<Int>{-21, 1, 1, 1, 1, 1, 1, 1, 1});
  auto n8 = normalize(p8).first;
  CHECK(n8.s == std::vector<Int>{0, 0, 0, 0, 1, 0, 0, 0, 1});

  const TwistedAffineDiagram& te6 = twisted_diagram(Family::E, 6, 2);
  CHECK(principal_kac(te6, 12).s == std::vector<Int>{-2, 1, 1, 1, 1});
  CHECK_THROWS(principal_kac(te6, 9));  // e does not divide m

  const TwistedAffineDiagram& f4 = twisted_diagram(Family::F, 4, 1);
  CHECK(principal_kac(f4, 8).s == std::vector<Int>{-3, 1, 1, 1, 1});
  CHECK(normalize(principal_kac(f4, 8)).first.s == std::vector<Int>{1, 1, 1, 0, 1});
  CHECK(normalize(principal_kac(f4, 6)).first.s == std::vector<Int>{1, 0, 1, 0, 1});
}

TEST_CASE("canonical forms under diagram symmetry") {
  const TwistedAffineDiagram& e8 = twisted_diagram(Family::E, 8, 1);
  KacVector v{&e8, {0, 0, 0, 0, 1, 0, 0, 0, 1}};
  CHECK(canonicalize(v) == v);  // trivial symmetry group

  const TwistedAffineDiagram& e6 = twisted_diagram(Family::E, 6, 1);
  // order-3 rotation orbit of a single tip label
  KacVector tip0{&e6, {12, 0, 0, 0, 0, 0, 0}};
  KacVector tip1{&e6, {0, 12, 0, 0, 0, 0, 0}};
  KacVector tip6{&e6, {0, 0, 0, 0, 0, 0, 12}};
  auto c = canonicalize(tip0);
  CHECK(canonicalize(tip1) == c);
  CHECK(canonicalize(tip6) == c);
  CHECK(c.s == std::vector<Int>{0, 0, 0, 0, 0, 0, 12});
}

TEST_CASE("minuscule involution diagrams") {
  const TwistedAffineDiagram& e7 = twisted_diagram(Family::E, 7, 1);
  auto v = minuscule_involution_kac(e7, 7);
  CHECK(vector_order(v) == 2);
  CHECK(v.s == std::vector<Int>{1, 0, 0, 0, 0, 0, 0, 1});
  const TwistedAffineDiagram& e8 = twisted_diagram(Family::E, 8, 1);
  CHECK_FALSE(has_minuscule_node(e8));
  CHECK_THROWS(minuscule_involution_kac(e8, 1));
  const TwistedAffineDiagram& a1 = twisted_diagram(Family::A, 1, 1);
  CHECK(minuscule_involution_kac(a1, 1).s == std::vector<Int>{1, 1});
}

TEST_CASE("power map preserves the order relation") {
  const TwistedAffineDiagram& e8 = twisted_diagram(Family::E, 8, 1);
  KacVector v{&e8, {1, 0, 0, 1, 0, 1, 0, 0, 1}};
  CHECK(vector_order(v) == 12);
  auto v2 = power_vector(v, 2);
  CHECK(vector_order(v2) == 12);
  auto n2 = canonical_form(v2);
  CHECK(label_gcd(n2) == 2);  // square has order 6 = 12/2
}

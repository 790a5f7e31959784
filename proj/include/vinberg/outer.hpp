#pragma once

// Outer gradings of E6 through the adjoint E7 picture: the minuscule
// coweight line, the coset of W(E7) acting by -1 on it, symmetric Kac
// diagrams and their restriction to the twisted diagram.

#include "classify.hpp"

namespace vinberg {

// gamma_1, gamma_2, gamma_3: pairwise orthogonal roots of E7 whose
// coroots sum to twice the minuscule coweight; the product of their
// reflections preserves the affine base and swaps it by the diagram flip.
struct OuterBridge {
  const RootSystem* e7 = nullptr;
  std::vector<Vec> gamma;
  Mat theta;                     // r_1 r_2 r_3
  std::vector<int> e6_nodes;     // Bourbaki nodes of the E6 Levi

  static const OuterBridge& get() {
    static OuterBridge b = [] {
      OuterBridge o;
      o.e7 = &root_system(Family::E, 7);
      o.gamma = {Vec{0, 1, 1, 2, 2, 2, 1}, Vec{1, 1, 1, 2, 2, 1, 1}, Vec{1, 1, 2, 2, 1, 1, 1}};
      Mat t = Mat::identity(7);
      for (const Vec& g : o.gamma) {
        if (!o.e7->is_root(g)) throw std::logic_error("bridge vector is not a root");
        t = t * reflection(*o.e7, g).matrix;
      }
      o.theta = t;
      o.e6_nodes = {0, 1, 2, 3, 4, 5};
      return o;
    }();
    return b;
  }
};

// sigma(mu-check) = -mu-check: the alpha_7 coefficient row must be -e_7.
inline bool minus_we6_test(const Mat& w) {
  for (int j = 0; j < 7; ++j)
    if (w(6, j) != (j == 6 ? -1 : 0)) return false;
  return true;
}

inline bool is_symmetric_e7(const std::vector<Int>& s) {
  return s[0] == s[7] && s[1] == s[6] && s[3] == s[5];
}

// E7 diagram (flip-symmetric, Bourbaki layout) -> twisted E6 labels.
inline std::vector<Int> restrict_symmetric(const std::vector<Int>& s) {
  if (s.size() != 8 || !is_symmetric_e7(s)) throw std::domain_error("diagram is not flip-symmetric");
  std::vector<Int> t{s[0], s[1], s[3], s[4], s[2]};
  return t;
}

inline std::vector<Int> symmetrize_to_e7(const std::vector<Int>& t) {
  if (t.size() != 5) throw std::domain_error("bad twisted label count");
  return {t[0], t[1], t[4], t[2], t[3], t[2], t[1], t[0]};
}

struct OuterClass {
  Mat rep;                 // in -W(E6) inside W(E7)
  ConjugacyFingerprint print;
  Int m = 1;               // order
  int rank = 0;            // Phi_m multiplicity on the E6 sublattice
  std::set<std::vector<Int>> kac_sym;  // symmetric E7 diagrams of its lifts
};

inline int e6_sublattice_rank(const Mat& w, Int m) {
  Mat sub(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      sub(i, j) = w(i, j);
      if (w(6, j) != 0 && j < 6) {
        // columns of E6-simple images must stay in the sublattice
      }
    }
  for (int j = 0; j < 6; ++j)
    if (w(6, j) != 0) throw std::logic_error("E6 sublattice is not preserved");
  return cyclotomic_multiplicity(char_poly(sub), int(m));
}

// Classes of W(E7) meeting the -W(E6) coset, with their symmetric diagram
// sets: enumerate v in the Levi Weyl group W(E6) (51840 elements), bucket
// sigma = -v by fingerprint, then realize each class through the admissible
// machinery to compute Kac diagrams.
inline const std::vector<OuterClass>& outer_classes() {
  static std::vector<OuterClass> cache = [] {
    const RootSystem& e7 = root_system(Family::E, 7);
    const TwistedAffineDiagram& tad7 = twisted_diagram(Family::E, 7, 1);
    Mat minusI(7, 7);
    for (int i = 0; i < 7; ++i) minusI(i, i) = -1;
    // span of the E6 Levi reflections, times -1
    std::map<ConjugacyFingerprint, Mat> reps;
    Int coset_size = 0;
    {
      std::vector<Mat> gens;
      for (int i = 0; i < 6; ++i) gens.push_back(simple_reflection(e7, i).matrix);
      std::unordered_set<detail::PackedMat, detail::PackedHash> seen;
      std::vector<Mat> frontier{Mat::identity(7)};
      seen.insert(detail::pack_mat(frontier[0]));
      while (!frontier.empty()) {
        std::vector<Mat> next;
        for (auto& v : frontier) {
          Mat sigma = minusI * v;
          if (!minus_we6_test(sigma)) throw std::logic_error("coset element fails the -1 test");
          ++coset_size;
          auto fp = fingerprint({&e7, sigma});
          if (!reps.count(fp)) reps.emplace(std::move(fp), sigma);
          for (auto& g : gens) {
            Mat v2 = g * v;
            auto key = detail::pack_mat(v2);
            if (seen.count(key)) continue;
            seen.insert(std::move(key));
            next.push_back(std::move(v2));
          }
        }
        frontier = std::move(next);
      }
    }
    if (coset_size != 51840) throw std::logic_error("unexpected coset size");

    // admissible realizations per order, for diagram computation
    std::map<Int, std::vector<AdmissibleClass>> by_order;
    std::vector<OuterClass> out;
    for (auto& [fp, sigma] : reps) {
      OuterClass oc;
      oc.rep = sigma;
      oc.print = fp;
      oc.m = fp.order;
      oc.rank = e6_sublattice_rank(sigma, oc.m);
      if (oc.rank == 0) {
        out.push_back(std::move(oc));
        continue;
      }
      if (!by_order.count(oc.m)) by_order[oc.m] = admissible_elements(e7, oc.m, false, true);
      for (auto& cls : by_order[oc.m]) {
        if (!(cls.print == fp)) continue;
        for (auto& key : kac_set(tad7, cls))
          if (is_symmetric_e7(key)) oc.kac_sym.insert(key);
      }
      out.push_back(std::move(oc));
    }
    return out;
  }();
  return cache;
}

// Rows of the outer classification; diagrams are twisted-E6 labels.
struct OuterRecord {
  Int m = 1;
  std::vector<Int> kac;  // twisted E6 labels (canonical; the symmetry group is trivial)
  int rank = 0;
  std::vector<Int> degrees;
  std::string degrees_source = "computed";
  bool stable = false;
  std::optional<IsotropyInvariants> isotropy;
  std::uint64_t witness_hash = 0;
};

struct OuterTable {
  std::vector<OuterRecord> records;
  // symmetric positive-rank E7 diagrams whose outer rank is zero
  std::vector<std::pair<Int, std::vector<Int>>> excluded;
};

// Degrees of the twisted degrees rule: {d : (-1)^d zeta_m^d = 1} over the
// degrees of E6; valid for principal outer automorphisms.
inline std::vector<Int> outer_principal_degrees(Int m) {
  std::vector<Int> out;
  for (Int d : root_system(Family::E, 6).degrees) {
    Int r = d % m;
    bool plus = d % 2 == 0;
    if (plus && r == 0) out.push_back(d);
    if (!plus && 2 * r == m) out.push_back(d);
  }
  return out;
}

// Curated degree lists for the outer rows whose determination rests on
// invariant-theory computations (keyed by the twisted diagram).
inline const std::map<std::vector<Int>, std::vector<Int>>& outer_degree_data() {
  static const std::map<std::vector<Int>, std::vector<Int>> data = {
      {{0, 1, 0, 1, 0}, {8}},       // m=8, symplectic-spin pair
      {{0, 1, 0, 0, 1}, {3, 6}},    // m=6, imprimitive rank-2 group
      {{0, 0, 0, 1, 1}, {6}},       // m=6
      {{0, 0, 1, 0, 0}, {3}},       // m=6
      {{1, 1, 0, 0, 0}, {3}},       // m=6
      {{0, 1, 0, 0, 0}, {4}},       // m=4
      {{1, 0, 0, 0, 1}, {4}},       // m=4
      {{1, 0, 0, 0, 0}, {2, 3}},    // m=2, pinned involution
  };
  return data;
}

inline OuterTable outer_table() {
  const RootSystem& e6 = root_system(Family::E, 6);
  const TwistedAffineDiagram& tad2 = twisted_diagram(Family::E, 6, 2);
  auto& classes = outer_classes();

  struct Info {
    int rank = 0;
    std::uint64_t witness = 0;
  };
  std::map<std::pair<Int, std::vector<Int>>, Info> diagrams;
  for (auto& oc : classes) {
    if (oc.rank == 0) continue;
    for (auto& sym : oc.kac_sym) {
      auto key = std::make_pair(oc.m, restrict_symmetric(sym));
      auto& info = diagrams[key];
      if (oc.rank > info.rank) {
        info.rank = oc.rank;
        info.witness = oc.print.hash();
      }
    }
  }

  auto twisted_witnesses = regular_elliptic_witnesses_twisted(e6, standard_twist(e6, 2));

  // inner E6 table for the power-pinning rule
  auto inner = positive_rank_table(Family::E, 6);
  auto inner_kac_sets = [&](Int m) {
    std::map<std::vector<Int>, std::vector<const GradingRecord*>> by_kac;
    for (auto& r : inner)
      if (r.m == m) by_kac[r.kac].push_back(&r);
    return by_kac;
  };

  OuterTable table;
  for (auto& [key, info] : diagrams) {
    auto [m, kac] = key;
    OuterRecord rec;
    rec.m = m;
    rec.kac = kac;
    rec.rank = info.rank;
    rec.witness_hash = info.witness;
    bool principal = kac == canonical_form(principal_kac(tad2, m)).s;
    rec.stable = twisted_witnesses.count(m) && principal;
    if (rec.stable)
      rec.isotropy = isotropy_invariants({&e6, twisted_witnesses.at(m)}, Int(tad2.omega.size()));
    if (principal) {
      rec.degrees = outer_principal_degrees(m);
    } else if (rec.rank == 1 && m % 2 == 0 && m > 2) {
      // pinned when every inner record of order m/2 whose diagram lifts the
      // square has the cyclic group of order m/2
      std::vector<const GradingRecord*> sq;
      // the square of a lift of sigma = -v is a lift of v^2 restricted to E6
      for (auto& oc : classes) {
        if (oc.print.hash() != info.witness) continue;
        Mat v2 = mat_pow(oc.rep, 2);
        Mat sub(6, 6);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) sub(i, j) = v2(i, j);
        auto fp2 = fingerprint({&e6, sub});
        auto adm = admissible_elements(e6, m / 2, true, true);
        const TwistedAffineDiagram& tad6 = twisted_diagram(Family::E, 6, 1);
        std::set<std::vector<Int>> k2;
        for (auto& cls : adm)
          if (cls.print == fp2)
            for (auto& d : kac_set(tad6, cls)) k2.insert(d);
        auto by_kac = inner_kac_sets(m / 2);
        bool pinned = !k2.empty();
        for (auto& d : k2)
          for (auto* r : by_kac[d])
            if (r->degrees != std::vector<Int>{m / 2}) pinned = false;
        if (pinned) rec.degrees = {m / 2};
        break;
      }
      if (rec.degrees.empty()) {
        auto it = outer_degree_data().find(kac);
        if (it != outer_degree_data().end()) {
          rec.degrees = it->second;
          rec.degrees_source = "annotation";
        }
      }
    } else {
      auto it = outer_degree_data().find(kac);
      if (it != outer_degree_data().end()) {
        rec.degrees = it->second;
        rec.degrees_source = "annotation";
      }
    }
    table.records.push_back(std::move(rec));
  }
  std::sort(table.records.begin(), table.records.end(), [](const OuterRecord& a, const OuterRecord& b) {
    if (a.m != b.m) return a.m > b.m;
    return a.kac < b.kac;
  });

  // exclusions: symmetric positive-rank E7 diagrams with no qualifying class
  auto e7table = positive_rank_table(Family::E, 7);
  for (auto& r : e7table) {
    if (!is_symmetric_e7(r.kac)) continue;
    auto key = std::make_pair(r.m, restrict_symmetric(r.kac));
    if (!diagrams.count(key)) table.excluded.emplace_back(r.m, restrict_symmetric(r.kac));
  }
  return table;
}

}  // namespace vinberg

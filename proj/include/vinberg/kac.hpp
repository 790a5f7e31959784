#pragma once

// Kac coordinate vectors on a (possibly twisted) affine diagram: the order
// formula, the normalization algorithm with a deterministic pivot policy,
// canonical forms under the realized diagram symmetries, principal points
// and minuscule-involution diagrams.

#include "twisted.hpp"

namespace vinberg {

struct KacVector {
  const TwistedAffineDiagram* diagram = nullptr;
  std::vector<Int> s;

  friend bool operator==(const KacVector& a, const KacVector& b) { return a.s == b.s; }
  friend bool operator<(const KacVector& a, const KacVector& b) { return a.s < b.s; }
};

inline Int vector_order(const KacVector& v) {
  Int sum = 0;
  for (size_t i = 0; i < v.s.size(); ++i) sum += v.diagram->marks[i] * v.s[i];
  Int m = v.diagram->e * sum;
  if (m <= 0) throw std::domain_error("point has non-positive order");
  return m;
}

inline bool is_normalized(const KacVector& v) {
  return std::all_of(v.s.begin(), v.s.end(), [](Int x) { return x >= 0; });
}

inline KacVector reflect_at(const KacVector& v, int j) {
  KacVector w = v;
  for (size_t i = 0; i < v.s.size(); ++i) w.s[i] = v.s[i] - v.diagram->affine_cartan(int(i), j) * v.s[j];
  return w;
}

// Normalizes by always reflecting at the smallest-index negative node.
// Returns the normalized vector and the transcript of reflections applied.
inline std::pair<KacVector, std::vector<int>> normalize(const KacVector& v) {
  vector_order(v);  // rejects non-positive order up front
  KacVector cur = v;
  std::vector<int> transcript;
  const long hard_limit = 1000000;
  while (true) {
    int j = -1;
    for (size_t i = 0; i < cur.s.size(); ++i)
      if (cur.s[i] < 0) { j = int(i); break; }
    if (j < 0) break;
    cur = reflect_at(cur, j);
    transcript.push_back(j);
    if (long(transcript.size()) > hard_limit) throw std::logic_error("normalization did not terminate");
  }
  return {cur, transcript};
}

inline KacVector apply_node_perm(const KacVector& v, const std::vector<int>& perm) {
  KacVector w = v;
  for (size_t i = 0; i < v.s.size(); ++i) w.s[size_t(perm[i])] = v.s[i];
  return w;
}

// Lexicographically least label vector over the diagram-symmetry orbit.
inline KacVector canonicalize(const KacVector& v) {
  if (!is_normalized(v)) throw std::domain_error("canonicalize expects a normalized vector");
  KacVector best = v;
  for (const auto& p : v.diagram->omega) {
    KacVector cand = apply_node_perm(v, p);
    if (cand.s < best.s) best = cand;
  }
  return best;
}

inline KacVector canonical_form(const KacVector& v) { return canonicalize(normalize(v).first); }

inline KacVector principal_kac(const TwistedAffineDiagram& tad, Int m) {
  if (m <= 0 || m % tad.e != 0) throw std::domain_error("order must be a positive multiple of e");
  KacVector v;
  v.diagram = &tad;
  v.s.assign(tad.nodes.size(), 1);
  v.s[0] = 1 + (m - tad.h_twisted) / tad.e;
  return v;
}

// Kac diagram of the order-two automorphism attached to a minuscule coweight
// node (an untwisted diagram node with mark 1 other than node 0).
inline KacVector minuscule_involution_kac(const TwistedAffineDiagram& tad, int j) {
  if (tad.e != 1) throw std::domain_error("minuscule involutions live on untwisted diagrams");
  if (j <= 0 || j >= int(tad.nodes.size()) || tad.marks[j] != 1)
    throw std::domain_error("node does not carry a minuscule coweight");
  KacVector v;
  v.diagram = &tad;
  v.s.assign(tad.nodes.size(), 0);
  v.s[0] = v.s[size_t(j)] = 1;
  return v;
}

inline bool has_minuscule_node(const TwistedAffineDiagram& tad) {
  for (size_t j = 1; j < tad.marks.size(); ++j)
    if (tad.marks[j] == 1) return true;
  return false;
}

// Kac vector of the k-th power: the point x0 + k (x - x0), which scales all
// coordinates except that psi_0's constant term 1/e stays put.
inline KacVector power_vector(const KacVector& v, Int k) {
  Int m = vector_order(v);
  KacVector w = v;
  for (size_t i = 1; i < v.s.size(); ++i) w.s[i] = k * v.s[i];
  w.s[0] = k * v.s[0] + (1 - k) * (m / v.diagram->e);
  return w;
}

inline Int label_gcd(const KacVector& v) {
  Int g = 0;
  for (Int x : v.s) g = gcd_int(g, x);
  return g;
}

// All normalized label vectors of exact order m (labels >= 0, coprime).
inline std::vector<KacVector> normalized_diagrams(const TwistedAffineDiagram& tad, Int m) {
  if (m % tad.e != 0) return {};
  Int target = m / tad.e;
  int N = int(tad.nodes.size());
  std::vector<KacVector> out;
  std::vector<Int> s(size_t(N), 0);
  std::function<void(int, Int)> rec = [&](int i, Int left) {
    if (i == N) {
      if (left != 0) return;
      KacVector v{&tad, s};
      if (label_gcd(v) == 1) out.push_back(v);
      return;
    }
    for (Int x = 0; x * tad.marks[i] <= left; ++x) {
      s[size_t(i)] = x;
      rec(i + 1, left - x * tad.marks[i]);
    }
    s[size_t(i)] = 0;
  };
  rec(0, target);
  return out;
}

// Canonical normalized diagrams of exact order m (one per omega-orbit).
inline std::vector<KacVector> canonical_diagrams(const TwistedAffineDiagram& tad, Int m) {
  std::set<std::vector<Int>> seen;
  std::vector<KacVector> out;
  for (const auto& v : normalized_diagrams(tad, m)) {
    KacVector c = canonicalize(v);
    if (seen.insert(c.s).second) out.push_back(c);
  }
  return out;
}

inline std::string render_labels(const KacVector& v) {
  std::string out;
  for (size_t i = 0; i < v.s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v.s[i]);
  }
  return out;
}

}  // namespace vinberg

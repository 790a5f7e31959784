#pragma once

// Exact automorphism algebra on a root system: reflections, orders,
// characteristic polynomials, ellipticity and Z-regularity, conjugacy
// fingerprints, class discovery (full enumeration or a two-involution
// search), centralizer orders and isotropy-lattice invariants.

#include <cstring>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "rootsystem.hpp"

namespace vinberg {

struct WeylAutomorphism {
  const RootSystem* rs = nullptr;
  Mat matrix;  // action on the root lattice, simple-root coordinates

  bool valid() const {
    for (const Vec& r : rs->roots)
      if (!rs->is_root(matrix.apply(r))) return false;
    return true;
  }
  friend bool operator==(const WeylAutomorphism& a, const WeylAutomorphism& b) { return a.matrix == b.matrix; }
};

inline WeylAutomorphism reflection(const RootSystem& rs, const Vec& alpha) {
  int ai = rs.root_index(alpha);
  if (ai < 0) throw std::domain_error("not a root");
  const Vec& ac = rs.coroots[ai];
  int n = rs.rank;
  Mat s = Mat::identity(n);
  for (int j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    Int p = rs.pairing(e, ac);
    for (int i = 0; i < n; ++i) s(i, j) -= p * alpha[i];
  }
  return {&rs, std::move(s)};
}

inline WeylAutomorphism simple_reflection(const RootSystem& rs, int i) {
  Vec e(rs.rank, 0);
  e[i] = 1;
  return reflection(rs, e);
}

inline WeylAutomorphism identity_automorphism(const RootSystem& rs) {
  return {&rs, Mat::identity(rs.rank)};
}

inline Int element_order(const WeylAutomorphism& w) {
  Mat p = w.matrix;
  Mat I = Mat::identity(w.matrix.n);
  Int n = 1;
  while (p != I) {
    p = p * w.matrix;
    ++n;
    if (n > 10000) throw std::logic_error("element order out of range");
  }
  return n;
}

inline bool fixes_some_root(const RootSystem& rs, const Mat& m) {
  for (const Vec& r : rs.roots)
    if (m.apply(r) == r) return true;
  return false;
}

inline bool is_elliptic(const WeylAutomorphism& w) {
  return mat_det(w.matrix - Mat::identity(w.matrix.n)) != 0;
}

// Free action of <w> on R: it suffices to test the prime-index powers.
inline bool is_z_regular(const WeylAutomorphism& w) {
  Int n = element_order(w);
  if (n == 1) return w.rs->roots.empty();
  Int n0 = n;
  for (Int p = 2; p * p <= n0; ++p) {
    if (n0 % p != 0) continue;
    while (n0 % p == 0) n0 /= p;
    if (fixes_some_root(*w.rs, mat_pow(w.matrix, n / p))) return false;
  }
  if (n0 > 1 && fixes_some_root(*w.rs, mat_pow(w.matrix, n / n0))) return false;
  return true;
}

inline int cyclotomic_rank(const WeylAutomorphism& w, Int m) {
  return cyclotomic_multiplicity(char_poly(w.matrix), int(m));
}

// ---------------------------------------------------------------------------
// Conjugacy fingerprints.

struct ConjugacyFingerprint {
  Int order = 1;
  // per divisor k of order: charpoly coefficients of w^k, #fixed roots,
  // #negated roots
  std::vector<std::tuple<Int, std::vector<Int>, Int, Int>> powers;
  std::vector<std::pair<Int, Int>> cycle_type;  // root permutation (length, count)

  friend bool operator==(const ConjugacyFingerprint& a, const ConjugacyFingerprint& b) {
    return a.order == b.order && a.powers == b.powers && a.cycle_type == b.cycle_type;
  }
  friend bool operator<(const ConjugacyFingerprint& a, const ConjugacyFingerprint& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.powers != b.powers) return a.powers < b.powers;
    return a.cycle_type < b.cycle_type;
  }
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](Int v) {
      h ^= std::uint64_t(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(order);
    for (auto& [k, cp, fx, ng] : powers) {
      mix(k);
      for (Int c : cp) mix(c);
      mix(fx);
      mix(ng);
    }
    for (auto& [l, c] : cycle_type) {
      mix(l);
      mix(c);
    }
    return h;
  }
};

inline std::vector<int> root_permutation(const RootSystem& rs, const Mat& m) {
  std::vector<int> perm(rs.roots.size());
  for (size_t k = 0; k < rs.roots.size(); ++k) {
    int img = rs.root_index(m.apply(rs.roots[k]));
    if (img < 0) throw std::domain_error("matrix does not preserve the root system");
    perm[k] = img;
  }
  return perm;
}

inline ConjugacyFingerprint fingerprint(const WeylAutomorphism& w) {
  ConjugacyFingerprint f;
  f.order = element_order(w);
  for (Int k = 1; k <= f.order; ++k) {
    if (f.order % k != 0) continue;
    Mat p = mat_pow(w.matrix, k);
    Int fixed = 0, negated = 0;
    for (const Vec& r : w.rs->roots) {
      Vec img = p.apply(r);
      if (img == r) ++fixed;
      if (img == -r) ++negated;
    }
    f.powers.emplace_back(k, char_poly(p).c, fixed, negated);
  }
  auto perm = root_permutation(*w.rs, w.matrix);
  std::vector<char> seen(perm.size(), 0);
  std::map<Int, Int> cycles;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    Int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = size_t(perm[j]);
      ++len;
    }
    cycles[len]++;
  }
  f.cycle_type.assign(cycles.begin(), cycles.end());
  return f;
}

// ---------------------------------------------------------------------------
// Compact element keys: the image of 2*rho-check (a regular coweight)
// determines a coset element uniquely.

namespace detail {

inline Vec two_rho_check(const RootSystem& rs) {
  Vec v(rs.rank, 0);
  for (int k : rs.positive)
    for (int i = 0; i < rs.rank; ++i) v[i] += rs.coroots[k][i];
  return v;
}

// Coweight-side action of the simple reflection s_i (coroot coordinates).
inline void coreflect(const RootSystem& rs, int i, Vec& v) {
  Int p = 0;
  for (int k = 0; k < rs.rank; ++k) p += rs.cartan(k, i) * v[k];
  v[i] -= p;
}

struct VecHash {
  size_t operator()(const Vec& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (Int x : v) h = (h ^ std::uint64_t(x)) * 1099511628211ull;
    return size_t(h);
  }
};

}  // namespace detail

// Enumerates the coset W*theta by left-multiplication BFS, invoking the
// visitor once per element.  Storage is one regular-coweight image per
// element.  Throws if the coset exceeds `bound`.
inline void enumerate_coset(const RootSystem& rs, const Mat& theta, Int bound,
                            const std::function<void(const Mat&)>& visit) {
  Vec base = detail::two_rho_check(rs);
  std::unordered_set<Vec, detail::VecHash> seen;
  std::vector<std::pair<Mat, Vec>> frontier;
  seen.insert(base);
  frontier.push_back({theta, base});
  visit(theta);
  while (!frontier.empty()) {
    std::vector<std::pair<Mat, Vec>> next;
    for (auto& [m, key] : frontier) {
      for (int i = 0; i < rs.rank; ++i) {
        Vec k2 = key;
        detail::coreflect(rs, i, k2);
        if (seen.count(k2)) continue;
        seen.insert(k2);
        if (Int(seen.size()) > bound) throw std::runtime_error("coset enumeration exceeds bound");
        Mat m2 = simple_reflection(rs, i).matrix * m;
        visit(m2);
        next.push_back({std::move(m2), std::move(k2)});
      }
    }
    frontier = std::move(next);
  }
}

// Conjugation orbit (= conjugacy class in W*theta under W) of m, as
// coweight-image keys; also reports one representative back per element if
// `collect` is set.
inline Int conjugacy_class_size(const RootSystem& rs, const Mat& m,
                                const std::function<void(const Mat&)>& visit = nullptr);

inline bool are_conjugate(const RootSystem& rs, const Mat& a, const Mat& b) {
  if (a == b) return true;
  bool found = false;
  conjugacy_class_size(rs, a, [&](const Mat& x) {
    if (x == b) found = true;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Decomposition of a root-system automorphism as (diagram part) * (Weyl part).

struct BasedDecomposition {
  std::vector<int> diagram_perm;  // node permutation; identity iff in W
  Mat weyl;                       // the W-part, m = diagram * weyl
};

inline std::optional<BasedDecomposition> decompose_automorphism(const RootSystem& rs, Mat m) {
  for (const Vec& r : rs.roots)
    if (!rs.is_root(m.apply(r))) return std::nullopt;
  auto negative_simple_image = [&](const Mat& g) -> int {
    for (int j = 0; j < rs.rank; ++j) {
      Vec e(rs.rank, 0);
      e[j] = 1;
      Vec img = g.apply(e);
      for (Int x : img) {
        if (x < 0) return j;
        if (x > 0) break;
      }
    }
    return -1;
  };
  Mat g = m;
  Mat w = Mat::identity(rs.rank);
  int guard = 0;
  for (int j; (j = negative_simple_image(g)) >= 0;) {
    Mat s = simple_reflection(rs, j).matrix;
    g = g * s;
    w = s * w;  // m = g * w with w a product of simple reflections
    if (++guard > int(rs.roots.size()) * 4) throw std::logic_error("base walk failed");
  }
  BasedDecomposition d;
  d.diagram_perm.resize(rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    Vec e(rs.rank, 0);
    e[j] = 1;
    Vec img = g.apply(e);
    bool simple = false;
    for (int i = 0; i < rs.rank; ++i) {
      Vec ei(rs.rank, 0);
      ei[i] = 1;
      if (img == ei) {
        d.diagram_perm[j] = i;
        simple = true;
        break;
      }
    }
    if (!simple) throw std::logic_error("base walk did not reach a based automorphism");
  }
  d.weyl = w;
  return d;
}

inline bool in_weyl_group(const RootSystem& rs, const Mat& m) {
  auto d = decompose_automorphism(rs, m);
  if (!d) return false;
  for (int i = 0; i < rs.rank; ++i)
    if (d->diagram_perm[i] != i) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Elliptic class discovery.

struct EllipticClass {
  WeylAutomorphism rep;
  ConjugacyFingerprint print;
  bool ambiguous = false;  // shares its fingerprint with another candidate
};

inline Int default_enumeration_bound() { return 10000000; }

namespace detail {

using PackedMat = std::vector<std::int8_t>;

inline PackedMat pack_mat(const Mat& m) {
  PackedMat p(m.a.size());
  for (size_t i = 0; i < m.a.size(); ++i) {
    assert(m.a[i] >= -127 && m.a[i] <= 127);
    p[i] = std::int8_t(m.a[i]);
  }
  return p;
}
inline Mat unpack_mat(const PackedMat& p, int n) {
  Mat m(n, n);
  for (size_t i = 0; i < p.size(); ++i) m.a[i] = p[i];
  return m;
}

struct PackedHash {
  size_t operator()(const PackedMat& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ std::uint64_t(std::uint8_t(x))) * 1099511628211ull;
    return size_t(h);
  }
};

}  // namespace detail

inline Int conjugacy_class_size(const RootSystem& rs, const Mat& m,
                                const std::function<void(const Mat&)>& visit) {
  std::vector<Mat> simple;
  for (int i = 0; i < rs.rank; ++i) simple.push_back(simple_reflection(rs, i).matrix);
  std::unordered_set<detail::PackedMat, detail::PackedHash> seen;
  std::vector<Mat> frontier{m};
  seen.insert(detail::pack_mat(m));
  if (visit) visit(m);
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const Mat& x : frontier) {
      for (const Mat& s : simple) {
        Mat y = s * x * s;
        auto k = detail::pack_mat(y);
        if (seen.count(k)) continue;
        seen.insert(std::move(k));
        if (visit) visit(y);
        next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return Int(seen.size());
}

// Exhaustive: enumerate the coset, bucket elliptic elements by fingerprint,
// split buckets by explicit conjugation orbits.
inline std::vector<EllipticClass> elliptic_classes_enumeration(const RootSystem& rs, const Mat& theta, Int bound) {
  std::map<std::uint64_t, std::vector<detail::PackedMat>> buckets;
  Mat I = Mat::identity(rs.rank);
  enumerate_coset(rs, theta, bound, [&](const Mat& m) {
    if (mat_det(m - I) == 0) return;
    buckets[fingerprint({&rs, m}).hash()].push_back(detail::pack_mat(m));
  });
  // Within each bucket keep one representative per true conjugacy class.
  std::vector<EllipticClass> out;
  for (auto& [h, cands] : buckets) {
    std::vector<Mat> reps;
    if (cands.size() == 1) {
      reps.push_back(detail::unpack_mat(cands[0], rs.rank));
    } else {
      std::unordered_map<detail::PackedMat, size_t, detail::PackedHash> where;
      for (size_t i = 0; i < cands.size(); ++i) where.emplace(cands[i], i);
      std::vector<char> claimed(cands.size(), 0);
      size_t left = cands.size();
      for (size_t i = 0; i < cands.size() && left > 0; ++i) {
        if (claimed[i]) continue;
        Mat rep = detail::unpack_mat(cands[i], rs.rank);
        reps.push_back(rep);
        conjugacy_class_size(rs, rep, [&](const Mat& x) {
          auto it = where.find(detail::pack_mat(x));
          if (it != where.end() && !claimed[it->second]) {
            claimed[it->second] = 1;
            --left;
          }
        });
      }
    }
    for (const Mat& r : reps) {
      EllipticClass c{{&rs, r}, fingerprint({&rs, r}), reps.size() > 1};
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const EllipticClass& a, const EllipticClass& b) { return a.print < b.print; });
  return out;
}

namespace detail {

// Orthogonal root-line subsets, enumerated as ascending index sequences over
// representatives of root lines (one of {r, -r} each).
inline void orthogonal_subsets(const RootSystem& rs, const std::vector<int>& lines,
                               const std::vector<std::vector<char>>& orth, int want, int start,
                               std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& emit) {
  if (int(cur.size()) == want) {
    emit(cur);
    return;
  }
  for (int i = start; i < int(lines.size()); ++i) {
    bool ok = true;
    for (int j : cur)
      if (!orth[size_t(j)][size_t(i)]) { ok = false; break; }
    if (!ok) continue;
    cur.push_back(i);
    orthogonal_subsets(rs, lines, orth, want, i + 1, cur, emit);
    cur.pop_back();
  }
}

}  // namespace detail

// Two-involution search: every elliptic class contains a product
// (prod_{a in S1} s_a)(prod_{b in S2} s_b) over orthogonal root subsets with
// S1 u S2 linearly independent of full rank.  S1 ranges over a transversal of
// involution types (deduped by the type of the root subsystem met by the
// span), S2 over everything.
inline std::vector<EllipticClass> elliptic_classes_carter(const RootSystem& rs) {
  int n = rs.rank;
  std::vector<int> lines;
  for (int k : rs.positive) lines.push_back(k);
  int L = int(lines.size());
  std::vector<std::vector<char>> orth(L, std::vector<char>(L, 0));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      orth[i][j] = rs.pairing(rs.roots[lines[i]], rs.coroots[lines[j]]) == 0;

  auto span_type = [&](const std::vector<int>& subset) {
    std::vector<Vec> gens;
    for (int i : subset) gens.push_back(rs.roots[lines[i]]);
    auto comps = subsystem_components(rs, gens);
    std::string sig;
    for (auto& c : comps) sig += c.type.str() + "+";
    return sig;
  };

  // Transversal of first factors by span-subsystem type.
  std::map<std::pair<int, std::string>, std::vector<int>> transversal;
  for (int k = 0; k <= n / 2; ++k) {
    std::vector<int> cur;
    detail::orthogonal_subsets(rs, lines, orth, k, 0, cur, [&](const std::vector<int>& s) {
      auto key = std::make_pair(k, span_type(s));
      if (!transversal.count(key)) transversal[key] = s;
    });
  }

  std::map<ConjugacyFingerprint, EllipticClass> found;
  Mat I = Mat::identity(n);
  for (auto& [key, s1] : transversal) {
    int k1 = int(s1.size());
    Mat m1 = I;
    for (int i : s1) m1 = m1 * reflection(rs, rs.roots[lines[i]]).matrix;
    std::vector<int> cur;
    detail::orthogonal_subsets(rs, lines, orth, n - k1, 0, cur, [&](const std::vector<int>& s2) {
      // S1 and S2 together must span.
      Mat span(n, n);
      int col = 0;
      for (int i : s1) {
        for (int r = 0; r < n; ++r) span(r, col) = rs.roots[lines[i]][r];
        ++col;
      }
      for (int i : s2) {
        for (int r = 0; r < n; ++r) span(r, col) = rs.roots[lines[i]][r];
        ++col;
      }
      if (mat_det(span) == 0) return;
      Mat m2 = I;
      for (int i : s2) m2 = m2 * reflection(rs, rs.roots[lines[i]]).matrix;
      Mat w = m1 * m2;
      if (mat_det(w - I) == 0) return;
      WeylAutomorphism el{&rs, w};
      auto f = fingerprint(el);
      if (!found.count(f)) found.emplace(f, EllipticClass{el, f, false});
    });
  }
  std::vector<EllipticClass> out;
  for (auto& [f, c] : found) out.push_back(c);
  return out;
}

// Randomized reflection-word search used as the completeness cross-check for
// the two-involution search: returns the number of distinct elliptic
// fingerprints reached after `rounds` batches without growth.
inline size_t elliptic_fingerprint_count_random(const RootSystem& rs, std::uint64_t seed, int stable_rounds = 6) {
  std::vector<Mat> refl;
  for (int k : rs.positive) refl.push_back(reflection(rs, rs.roots[k]).matrix);
  std::set<ConjugacyFingerprint> prints;
  std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ull;
  auto rnd = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  Mat I = Mat::identity(rs.rank);
  int quiet = 0;
  while (quiet < stable_rounds) {
    size_t before = prints.size();
    for (int t = 0; t < 2000; ++t) {
      Mat w = I;
      int len = rs.rank + int(rnd() % (2 * rs.rank));
      for (int s = 0; s < len; ++s) w = w * refl[rnd() % refl.size()];
      if (mat_det(w - I) == 0) continue;
      prints.insert(fingerprint({&rs, w}));
    }
    quiet = prints.size() == before ? quiet + 1 : 0;
  }
  return prints.size();
}

enum class ClassStrategy { Enumeration, CarterSearch };

inline std::vector<EllipticClass> elliptic_classes(const RootSystem& rs, const PinnedAutomorphism& theta,
                                                   ClassStrategy strategy, Int bound = default_enumeration_bound()) {
  if (strategy == ClassStrategy::Enumeration) {
    if (weyl_order(rs.type.family, rs.rank) > bound)
      throw std::runtime_error("enumeration bound exceeded; use the two-involution search");
    return elliptic_classes_enumeration(rs, theta.matrix, bound);
  }
  if (theta.order != 1) throw std::invalid_argument("two-involution search is for the inner case");
  return elliptic_classes_carter(rs);
}

// ---------------------------------------------------------------------------
// Centralizer order.

inline Int centralizer_order(const RootSystem& rs, const WeylAutomorphism& w,
                             Int bound = default_enumeration_bound(),
                             const std::map<ConjugacyFingerprint, Int>* cache = nullptr) {
  Int size_w = weyl_order(rs.type.family, rs.rank);
  if (size_w <= bound) {
    Int cls = conjugacy_class_size(rs, w.matrix);
    return size_w / cls;
  }
  Int m = element_order(w);
  if (is_elliptic(w) && is_z_regular(w)) {
    Int c = 1;
    for (Int d : rs.degrees)
      if (d % m == 0) c = checked_mul(c, d);
    return c;
  }
  if (cache) {
    auto it = cache->find(fingerprint(w));
    if (it != cache->end()) return it->second;
  }
  throw std::runtime_error("centralizer order unavailable: supply a cached value");
}

// ---------------------------------------------------------------------------
// Isotropy invariants of a stable (elliptic) automorphism.

struct IsotropyInvariants {
  Int det_value = 0;                  // |det(1 - sigma)|
  std::vector<Int> elementary_divisors;
  Int s0_order = 0;                   // det / |Omega|
};

inline IsotropyInvariants isotropy_invariants(const WeylAutomorphism& w, Int omega_order) {
  Mat d = Mat::identity(w.matrix.n) - w.matrix;
  Int det = std::llabs(mat_det(d));
  if (det == 0) throw std::domain_error("automorphism is not elliptic");
  if (det % omega_order != 0) throw std::logic_error("diagram symmetry order does not divide det(1-sigma)");
  IsotropyInvariants inv;
  inv.det_value = det;
  inv.elementary_divisors = smith_normal_form(d);
  inv.s0_order = det / omega_order;
  return inv;
}

}  // namespace vinberg

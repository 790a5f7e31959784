#pragma once

// The classification pipeline: orders of elliptic Z-regular automorphisms,
// stable-grading tables, admissible elements and their Kac-coordinate sets,
// the power-constraint filter for non-regular elliptic classes, and the
// positive-rank tables with little-Weyl degrees.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include "kac.hpp"

namespace vinberg {

// ---------------------------------------------------------------------------
// Regular elliptic orders.

// Inner case: m is the order of an elliptic Z-regular element of W iff m
// divides as many degrees as codegrees (d_i - 2) and divides no exponent.
inline bool is_regular_number(const std::vector<Int>& degrees, Int m) {
  int a = 0, b = 0;
  for (Int d : degrees) {
    if (d % m == 0) ++a;
    if ((d - 2) % m == 0) ++b;
  }
  return a == b && a > 0;
}

inline bool is_regular_elliptic_order_inner(const RootSystem& rs, Int m) {
  if (!is_regular_number(rs.degrees, m)) return false;
  for (Int e : rs.exponents)
    if (e % m == 0) return false;
  return true;
}

inline std::vector<Int> regular_elliptic_orders_inner(const RootSystem& rs) {
  std::vector<Int> out;
  Int h = rs.degrees.back();
  for (Int m = h; m >= 2; --m)
    if (is_regular_elliptic_order_inner(rs, m)) out.push_back(m);
  return out;
}

// Twisted case: scan the coset W*theta.  For the classical families the coset
// is enumerated through signed/plain cycle types; for the exceptional twists
// the coset itself is small.
inline std::map<Int, Mat> regular_elliptic_witnesses_twisted(const RootSystem& rs, const PinnedAutomorphism& theta) {
  std::map<Int, Mat> found;
  auto consider = [&](const Mat& m) {
    WeylAutomorphism w{&rs, m};
    if (!is_elliptic(w)) return;
    Int n = element_order(w);
    if (found.count(n)) return;
    if (is_z_regular(w)) found.emplace(n, m);
  };
  Family f = rs.type.family;
  int n = rs.rank;
  if (theta.order == 2 && f == Family::A) {
    // sigma = -(permutation) on the A_n lattice; scan cycle types of S_{n+1}.
    std::vector<std::vector<Int>> parts;
    std::vector<Int> cur;
    std::function<void(Int, Int)> rec = [&](Int left, Int maxp) {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (Int p = std::min(left, maxp); p >= 1; --p) {
        cur.push_back(p);
        rec(left - p, p);
        cur.pop_back();
      }
    };
    rec(n + 1, n + 1);
    for (auto& lam : parts) {
      // permutation with the given cycle type on e_1..e_{n+1}; express
      // -P on the simple roots alpha_i = e_i - e_{i+1}.
      std::vector<int> img(n + 1);
      int base = 0;
      for (Int p : lam) {
        for (Int i = 0; i < p; ++i) img[base + i] = base + int((i + 1) % p);
        base += int(p);
      }
      Mat m(n, n);
      // alpha_j -> -(e_{img[j]} - e_{img[j+1]}); express e_a - e_b in alphas.
      auto diff = [&](int a, int b) {  // e_a - e_b
        Vec v(n, 0);
        for (int i = std::min(a, b); i < std::max(a, b); ++i) v[i] = a < b ? 1 : -1;
        return v;
      };
      for (int j = 0; j < n; ++j) {
        Vec v = diff(img[j], img[j + 1]);
        for (int i = 0; i < n; ++i) m(i, j) = -v[i];
      }
      consider(m);
    }
    return found;
  }
  if (theta.order == 2 && f == Family::D) {
    // Coset = signed permutations with an odd number of negative cycles;
    // elliptic ones have all cycles negative.  Scan all-negative types with
    // an odd number of parts.
    std::vector<std::vector<Int>> parts;
    std::vector<Int> cur;
    std::function<void(Int, Int)> rec = [&](Int left, Int maxp) {
      if (left == 0) {
        if (cur.size() % 2 == 1) parts.push_back(cur);
        return;
      }
      for (Int p = std::min(left, maxp); p >= 1; --p) {
        cur.push_back(p);
        rec(left - p, p);
        cur.pop_back();
      }
    };
    rec(n, n);
    for (auto& lam : parts) {
      // negative cycles: e_{b} -> e_{b+1} -> ... -> -e_b
      std::vector<std::pair<int, int>> img(n);  // (index, sign)
      int base = 0;
      for (Int p : lam) {
        for (Int i = 0; i < p; ++i) img[base + i] = {base + int((i + 1) % p), i + 1 == p ? -1 : 1};
        base += int(p);
      }
      // express images of alpha_i in the alpha basis of D_n
      // e-coordinates: alpha_i = e_i - e_{i+1} (i<n-1), alpha_{n-1} = e_{n-2}+e_{n-1} (0-indexed)
      Mat tocoord(n, n);  // columns: alpha_j in e-coords
      for (int j = 0; j + 1 < n; ++j) {
        tocoord(j, j) = 1;
        tocoord(j + 1, j) = -1;
      }
      tocoord(n - 2, n - 1) = 1;
      tocoord(n - 1, n - 1) = 1;
      // inverse map by solving; n <= 8 so rational solve per column is fine
      Mat m(n, n);
      for (int j = 0; j < n; ++j) {
        Vec e_img(n, 0);
        // image of alpha_j in e-coords
        for (int r = 0; r < n; ++r) {
          Int c = tocoord(r, j);
          if (c == 0) continue;
          e_img[img[r].first] += c * img[r].second;
        }
        auto sol = solve_rational(tocoord, e_img);
        for (int i = 0; i < n; ++i) {
          if (!sol[i].is_integer()) throw std::logic_error("non-integral coset element");
          m(i, j) = sol[i].num;
        }
      }
      consider(m);
    }
    return found;
  }
  // generic: enumerate the coset (fine for ^2E6 and ^3D4)
  enumerate_coset(rs, theta.matrix, default_enumeration_bound(), consider);
  return found;
}

// Inner witnesses: an explicit elliptic Z-regular element per regular order.
inline std::map<Int, Mat> regular_elliptic_witnesses_inner(const RootSystem& rs) {
  std::map<Int, Mat> found;
  auto orders = regular_elliptic_orders_inner(rs);
  std::sort(orders.begin(), orders.end(), std::greater<Int>());
  Mat minusI(rs.rank, rs.rank);
  for (int i = 0; i < rs.rank; ++i) minusI(i, i) = -1;
  for (Int m : orders) {
    // power of an already-found witness
    bool done = false;
    for (auto& [m2, w2] : found)
      if (m2 % m == 0) {
        found.emplace(m, mat_pow(w2, m2 / m));
        done = true;
        break;
      }
    if (done) continue;
    if (m == 2 && in_weyl_group(rs, minusI)) {
      found.emplace(m, minusI);
      continue;
    }
    // seeded random reflection products; the target class has index
    // (product of degrees divisible by m), which is small for maximal m.
    std::vector<Mat> refl;
    for (int k : rs.positive) refl.push_back(reflection(rs, rs.roots[k]).matrix);
    std::uint64_t state = 0x2545F4914F6CDD1Dull ^ (std::uint64_t(m) << 32) ^ std::uint64_t(rs.rank);
    auto rnd = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state;
    };
    bool ok = false;
    for (long trial = 0; trial < 4000000 && !ok; ++trial) {
      Mat w = Mat::identity(rs.rank);
      int len = rs.rank + int(rnd() % (2 * rs.rank));
      for (int s = 0; s < len; ++s) w = w * refl[rnd() % refl.size()];
      WeylAutomorphism el{&rs, w};
      if (element_order(el) != m) continue;
      if (!is_elliptic(el)) continue;
      if (!is_z_regular(el)) continue;
      found.emplace(m, w);
      ok = true;
    }
    if (!ok) throw std::logic_error("no regular elliptic witness found for order " + std::to_string(m));
  }
  return found;
}

inline std::vector<Int> regular_elliptic_orders(const RootSystem& rs, const PinnedAutomorphism& theta) {
  if (theta.order == 1) return regular_elliptic_orders_inner(rs);
  std::vector<Int> out;
  for (auto& [m, w] : regular_elliptic_witnesses_twisted(rs, theta)) out.push_back(m);
  std::sort(out.begin(), out.end(), std::greater<Int>());
  return out;
}

// ---------------------------------------------------------------------------
// Stable tables.

struct StableRow {
  Int m = 0;
  std::vector<Int> unnormalized;
  std::vector<Int> normalized;  // canonical
  IsotropyInvariants isotropy;
};

inline std::vector<StableRow> stable_table(Family f, int rank, int twist) {
  const RootSystem& rs = root_system(f, rank);
  const TwistedAffineDiagram& tad = twisted_diagram(f, rank, twist);
  std::map<Int, Mat> witnesses = twist == 1 ? regular_elliptic_witnesses_inner(rs)
                                            : regular_elliptic_witnesses_twisted(rs, standard_twist(rs, twist));
  std::vector<StableRow> rows;
  for (auto it = witnesses.rbegin(); it != witnesses.rend(); ++it) {
    auto [m, w] = *it;
    StableRow row;
    row.m = m;
    KacVector p = principal_kac(tad, m);
    row.unnormalized = p.s;
    row.normalized = canonical_form(p).s;
    row.isotropy = isotropy_invariants({&rs, w}, Int(tad.omega.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Elliptic classes of the component types, with their Kac labels.

struct ComponentClass {
  TypeLabel type;
  std::vector<Vec> refl_roots;  // product of reflections, abstract simple coords
  Int order = 1;
  ConjugacyFingerprint print;
  bool z_regular = false;
};

// Canonical normalized Kac diagram of a component class, resolved on demand
// (some elliptic classes admit neither a pseudo-Levi factorization nor a
// power pinning; those are never needed as admissible factors).
inline const std::vector<Int>& class_diagram(const ComponentClass& cls);

inline Mat class_matrix(const RootSystem& rs, const std::vector<Vec>& refl_roots) {
  Mat m = Mat::identity(rs.rank);
  for (const Vec& r : refl_roots) m = m * reflection(rs, r).matrix;
  return m;
}

// Optional persistence hooks (installed by the cache layer) and a global
// computation deadline for budgeted runs.
struct ComponentClass;
inline std::function<bool(const TypeLabel&, std::vector<ComponentClass>*)>& class_cache_loader() {
  static std::function<bool(const TypeLabel&, std::vector<ComponentClass>*)> f;
  return f;
}
inline std::function<void(const TypeLabel&, const std::vector<ComponentClass>&)>& class_cache_saver() {
  static std::function<void(const TypeLabel&, const std::vector<ComponentClass>&)> f;
  return f;
}

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("computation budget exceeded") {}
};
inline std::optional<std::chrono::steady_clock::time_point>& computation_deadline() {
  static std::optional<std::chrono::steady_clock::time_point> d;
  return d;
}
inline void check_deadline() {
  if (computation_deadline() && std::chrono::steady_clock::now() > *computation_deadline()) throw BudgetExceeded();
}

inline std::vector<KacVector> powers_filter(const RootSystem& rs, const WeylAutomorphism& w, Int m,
                                            const std::vector<std::pair<Int, KacVector>>& constraints);

inline KacVector elliptic_class_diagram(const RootSystem& rs, const WeylAutomorphism& w);

// All elliptic classes of the Weyl group of an irreducible type, each with a
// product-of-reflections representative (for transport into larger ambient
// systems) and its unique canonical Kac diagram.
inline const std::vector<ComponentClass>& component_classes(Family f, int rank) {
  static std::map<TypeLabel, std::vector<ComponentClass>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  TypeLabel t{f, rank};
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;

  const RootSystem& rs = root_system(f, rank);
  std::vector<ComponentClass> out;
  if (class_cache_loader() && class_cache_loader()(t, &out))
    return cache.emplace(t, std::move(out)).first->second;
  // The two-involution search keeps the reflection roots of each factor.
  int n = rs.rank;
  std::vector<int> lines = rs.positive;
  int L = int(lines.size());
  std::vector<std::vector<char>> orth(L, std::vector<char>(L, 0));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      orth[i][j] = rs.pairing(rs.roots[lines[i]], rs.coroots[lines[j]]) == 0;

  std::map<std::uint64_t, std::vector<int>> invol_transversal;
  for (int k = 0; k <= n / 2; ++k) {
    std::vector<int> cur;
    detail::orthogonal_subsets(rs, lines, orth, k, 0, cur, [&](const std::vector<int>& s) {
      Mat mm = Mat::identity(n);
      for (int i : s) mm = mm * reflection(rs, rs.roots[lines[i]]).matrix;
      auto key = fingerprint({&rs, mm}).hash();
      if (!invol_transversal.count(key)) invol_transversal[key] = s;
    });
  }
  std::map<ConjugacyFingerprint, std::vector<Vec>> found;
  Mat I = Mat::identity(n);
  for (auto& [key, s1] : invol_transversal) {
    check_deadline();
    int k1 = int(s1.size());
    Mat m1 = I;
    for (int i : s1) m1 = m1 * reflection(rs, rs.roots[lines[i]]).matrix;
    std::vector<int> cur;
    detail::orthogonal_subsets(rs, lines, orth, n - k1, 0, cur, [&](const std::vector<int>& s2) {
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
      auto fp = fingerprint({&rs, w});
      if (found.count(fp)) return;
      std::vector<Vec> roots;
      for (int i : s1) roots.push_back(rs.roots[lines[i]]);
      for (int i : s2) roots.push_back(rs.roots[lines[i]]);
      found.emplace(std::move(fp), std::move(roots));
    });
  }
  for (auto& [fp, roots] : found) {
    ComponentClass c;
    c.type = t;
    c.refl_roots = roots;
    c.order = fp.order;
    c.print = fp;
    c.z_regular = is_z_regular({&rs, class_matrix(rs, roots)});
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ComponentClass& a, const ComponentClass& b) { return a.print < b.print; });
  if (class_cache_saver()) class_cache_saver()(t, out);
  return cache.emplace(t, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Admissible elements on an untwisted ambient diagram.

struct AdmissibleFactor {
  std::vector<int> nodes;      // ambient affine node ids
  TypeLabel type;
  Int order = 1;               // order of this factor
  bool z_regular = false;
  std::vector<Int> labels;     // normalized sub-diagram labels on `nodes`
                               // (already matched node-by-node), at the
                               // factor's own order
  std::vector<Vec> ambient_refl;  // reflection word of the factor, ambient coords
};

struct AdmissibleRealization {
  std::vector<AdmissibleFactor> factors;
  Mat total;  // ambient matrix
};

struct AdmissibleClass {
  Int m = 1;
  int rank = 0;
  ConjugacyFingerprint print;
  std::vector<AdmissibleRealization> realizations;
  bool ambiguous = false;

  bool all_factors_z_regular() const {
    for (auto& r : realizations) {
      bool ok = true;
      for (auto& f : r.factors) ok &= f.z_regular;
      if (ok) return true;
    }
    return false;
  }
  Int witness_levi_order() const {
    Int best = -1;
    for (auto& r : realizations) {
      bool ok = true;
      Int sz = 1;
      for (auto& f : r.factors) {
        ok &= f.z_regular;
        sz = checked_mul(sz, weyl_order(f.type.family, f.type.rank));
      }
      if (!ok) continue;
      if (best < 0 || sz < best) best = sz;
    }
    if (best >= 0) return best;
    for (auto& r : realizations) {
      Int sz = 1;
      for (auto& f : r.factors) sz = checked_mul(sz, weyl_order(f.type.family, f.type.rank));
      if (best < 0 || sz < best) best = sz;
    }
    return best;
  }
};

namespace detail {

// Roots attached to the affine nodes: node 0 carries the lowest root.
inline std::vector<Vec> affine_node_roots(const TwistedAffineDiagram& tad) {
  const RootSystem& rs = *tad.rs;
  std::vector<Vec> out;
  out.push_back(rs.roots[rs.lowest]);
  for (size_t i = 1; i < tad.nodes.size(); ++i) {
    Vec e(rs.rank, 0);
    e[tad.nodes[i].orbit_simples[0]] = 1;
    out.push_back(e);
  }
  return out;
}

// Labels of an abstract class diagram keyed by abstract Bourbaki simple node
// (dropping the affine node), given the layout used by the abstract diagram.
inline std::vector<Int> simple_labels(const TypeLabel& t, const std::vector<Int>& diagram) {
  const TwistedAffineDiagram& tad = twisted_diagram(t.family, t.rank, 1);
  std::vector<Int> out(size_t(t.rank), 0);
  for (size_t i = 1; i < tad.nodes.size(); ++i) out[size_t(tad.nodes[i].orbit_simples[0])] = diagram[i];
  return out;
}

}  // namespace detail

// Enumerates classes of products w = w_1 ... w_d over the components of
// proper affine-node subsets (w_i elliptic in its component), plus the
// elliptic classes of the ambient group itself.  With `strict` every factor
// has order m and an order-m eigenvalue; otherwise factor orders may divide
// m with lcm m (needed to resolve arbitrary classes, not just admissible
// ones).
inline std::vector<AdmissibleClass> admissible_elements(const RootSystem& rs, Int m, bool strict = true,
                                                        bool include_ambient = true) {
  const TwistedAffineDiagram& tad = twisted_diagram(rs.type.family, rs.rank, 1);
  auto node_roots = detail::affine_node_roots(tad);
  int N = int(tad.nodes.size());
  std::map<ConjugacyFingerprint, AdmissibleClass> classes;

  auto add_realization = [&](AdmissibleRealization real) {
    WeylAutomorphism w{&rs, real.total};
    auto fp = fingerprint(w);
    if (fp.order != m) return;
    int rank = cyclotomic_multiplicity(char_poly(real.total), int(m));
    if (rank == 0) return;
    auto it = classes.find(fp);
    if (it == classes.end()) {
      AdmissibleClass c;
      c.m = m;
      c.rank = rank;
      c.print = fp;
      c.realizations.push_back(std::move(real));
      classes.emplace(fp, std::move(c));
    } else {
      it->second.realizations.push_back(std::move(real));
    }
  };

  // Proper node subsets; each subset decomposes into orthogonal irreducible
  // components along the diagram.
  for (int mask = 1; mask < (1 << N) - 1; ++mask) {
    std::vector<int> nodes;
    for (int i = 0; i < N; ++i)
      if (mask & (1 << i)) nodes.push_back(i);
    // components by diagram adjacency
    std::vector<int> comp(nodes.size(), -1);
    int nc = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (comp[i] >= 0) continue;
      std::vector<size_t> stack{i};
      comp[i] = nc;
      while (!stack.empty()) {
        size_t x = stack.back();
        stack.pop_back();
        for (size_t j = 0; j < nodes.size(); ++j)
          if (comp[j] < 0 && tad.affine_cartan(nodes[x], nodes[j]) != 0) {
            comp[j] = nc;
            stack.push_back(j);
          }
      }
      ++nc;
    }
    std::vector<std::vector<int>> comps(nc);
    for (size_t i = 0; i < nodes.size(); ++i) comps[comp[i]].push_back(nodes[i]);

    // identify each component and list its usable classes
    struct Option {
      AdmissibleFactor factor;
      const ComponentClass* cls;
      std::vector<Vec> ambient_simples;
    };
    std::vector<std::vector<Option>> options(nc);
    bool dead = false;
    for (int c = 0; c < nc && !dead; ++c) {
      auto& cn = comps[c];
      int k = int(cn.size());
      Mat sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = tad.affine_cartan(cn[i], cn[j]);
      auto [ctype, perm] = identify_cartan(sub);
      if (ctype.rank == rs.rank && int(root_system(ctype.family, ctype.rank).roots.size()) == int(rs.roots.size())) {
        // component regenerates the whole system; covered by the ambient case
        dead = true;
        break;
      }
      std::vector<Vec> amb_simples(cn.size());
      std::vector<int> amb_nodes(cn.size());
      for (int i = 0; i < k; ++i) {
        amb_simples[size_t(i)] = node_roots[size_t(cn[size_t(perm[i])])];
        amb_nodes[size_t(i)] = cn[size_t(perm[i])];
      }
      for (const auto& cls : component_classes(ctype.family, ctype.rank)) {
        bool usable = strict ? (cls.order == m && cls.print.powers.size() > 0 &&
                                cyclotomic_multiplicity(Poly(std::get<1>(cls.print.powers.front())), int(m)) > 0)
                             : (m % cls.order == 0);
        if (!usable) continue;
        std::vector<Int> diagram;
        try {
          diagram = class_diagram(cls);
        } catch (const std::logic_error&) {
          continue;  // no pinned sub-diagram: unusable as a labelled factor
        }
        Option o;
        o.cls = &cls;
        o.factor.type = ctype;
        o.factor.order = cls.order;
        o.factor.z_regular = cls.z_regular;
        o.factor.nodes = amb_nodes;
        auto labels = detail::simple_labels(ctype, diagram);
        o.factor.labels.assign(labels.begin(), labels.end());
        o.ambient_simples = amb_simples;
        options[c].push_back(std::move(o));
      }
      if (options[c].empty()) dead = true;
    }
    if (dead) continue;

    // cartesian product over components
    std::vector<size_t> pick(nc, 0);
    while (true) {
      Int l = 1;
      for (int c = 0; c < nc; ++c) l = lcm_int(l, options[c][pick[c]].factor.order);
      if (l == m) {
        AdmissibleRealization real;
        real.total = Mat::identity(rs.rank);
        bool good = true;
        for (int c = 0; c < nc; ++c) {
          const Option& o = options[c][pick[c]];
          AdmissibleFactor f = o.factor;
          // transport the abstract reflection word
          for (const Vec& ar : o.cls->refl_roots) {
            Vec amb(rs.rank, 0);
            for (int i = 0; i < int(o.ambient_simples.size()); ++i) amb = amb + ar[i] * o.ambient_simples[size_t(i)];
            if (!rs.is_root(amb)) {
              good = false;
              break;
            }
            f.ambient_refl.push_back(amb);
            real.total = real.total * reflection(rs, amb).matrix;
          }
          if (!good) break;
          real.factors.push_back(std::move(f));
        }
        if (good) add_realization(std::move(real));
      }
      int c = 0;
      while (c < nc && ++pick[c] == options[c].size()) pick[c++] = 0;
      if (c == nc) break;
    }
  }

  // Ambient elliptic classes.
  if (include_ambient) {
    for (const auto& cls : component_classes(rs.type.family, rs.rank)) {
      if (cls.order != m) continue;
      if (cyclotomic_multiplicity(Poly(std::get<1>(cls.print.powers.front())), int(m)) == 0) continue;
      AdmissibleRealization real;
      real.total = class_matrix(rs, cls.refl_roots);
      AdmissibleFactor f;
      f.type = rs.type;
      f.order = cls.order;
      f.z_regular = cls.z_regular;
      for (int i = 0; i < N; ++i) f.nodes.push_back(i);
      f.labels = class_diagram(cls);  // full diagram, all nodes fixed
      f.ambient_refl = cls.refl_roots;
      real.factors.push_back(std::move(f));
      add_realization(std::move(real));
    }
  }

  std::vector<AdmissibleClass> out;
  for (auto& [fp, c] : classes) out.push_back(std::move(c));
  return out;
}

// ---------------------------------------------------------------------------
// Kac coordinate sets of admissible classes.

// Un-normalized vectors for one realization: labels are fixed on the factor
// nodes (scaled from each factor's own order up to m), remaining coordinates
// range over residue representatives subject to the order-m relation.
inline std::vector<KacVector> kac_un(const TwistedAffineDiagram& tad, const AdmissibleRealization& real, Int m) {
  int N = int(tad.nodes.size());
  std::vector<Int> fixed(size_t(N), -1);
  std::vector<char> isfixed(size_t(N), 0);
  bool full = false;
  for (auto& f : real.factors) {
    if (int(f.nodes.size()) == N) {
      // ambient class: the unique diagram itself
      full = true;
      KacVector v{&tad, f.labels};
      return {v};
    }
    Int scale = m / f.order;
    for (size_t i = 0; i < f.nodes.size(); ++i) {
      isfixed[size_t(f.nodes[i])] = 1;
      fixed[size_t(f.nodes[i])] = f.labels[i] * scale;
    }
  }
  (void)full;
  std::vector<int> frees;
  for (int i = 0; i < N; ++i)
    if (!isfixed[size_t(i)]) frees.push_back(i);
  Int target = m / tad.e;
  for (int i = 0; i < N; ++i)
    if (isfixed[size_t(i)]) target -= tad.marks[i] * fixed[size_t(i)];
  std::vector<KacVector> out;
  if (frees.empty()) {
    if (target == 0) {
      KacVector v{&tad, std::vector<Int>(fixed.begin(), fixed.end())};
      if (label_gcd(v) == 1) out.push_back(v);
    }
    return out;
  }
  // Free coordinates range over residues mod m; a residue combination is
  // realizable iff target - sum is in m * gcd(free marks) * Z, and any
  // integral lift represents its translation class.
  Int gfree = 0;
  for (int i : frees) gfree = gcd_int(gfree, tad.marks[i]);
  std::vector<Int> s(size_t(N), 0);
  for (int i = 0; i < N; ++i)
    if (isfixed[size_t(i)]) s[size_t(i)] = fixed[size_t(i)];
  std::function<void(size_t, Int)> rec = [&](size_t idx, Int rest) {
    if (idx == frees.size()) {
      if (rest % (m * gfree) != 0) return;
      Int k = rest / m;  // distribute: sum of marks[i] * t_i = k over frees
      std::vector<Int> t(frees.size(), 0);
      if (k != 0) {
        // solve sum a_i t_i = k by a suffix-gcd sweep
        std::vector<Int> a;
        for (int i : frees) a.push_back(tad.marks[i]);
        std::vector<Int> suffix(a.size() + 1, 0);
        for (size_t i = a.size(); i-- > 0;) suffix[i] = gcd_int(a[i], suffix[i + 1]);
        Int need = k;
        for (size_t i = 0; i < a.size(); ++i) {
          if (i + 1 == a.size()) {
            if (need % a[i] != 0) throw std::logic_error("diophantine lift failed");
            t[i] = need / a[i];
            need = 0;
            break;
          }
          Int mod = suffix[i + 1];
          Int found = -1;
          for (Int c = 0; c < mod; ++c)
            if (((need - a[i] * c) % mod + mod) % mod == 0) { found = c; break; }
          if (found < 0) throw std::logic_error("diophantine lift failed");
          t[i] = found;
          need -= a[i] * found;
        }
        if (need != 0) throw std::logic_error("diophantine lift failed");
      }
      KacVector v{&tad, s};
      for (size_t i = 0; i < frees.size(); ++i) v.s[size_t(frees[i])] += m * t[i];
      Int sum = 0;
      for (int i = 0; i < N; ++i) sum += tad.marks[i] * v.s[size_t(i)];
      if (tad.e * sum != m) throw std::logic_error("lift failed");
      if (label_gcd(v) != 1) return;
      out.push_back(v);
      return;
    }
    int node = frees[idx];
    for (Int r = 0; r < m; ++r) {
      s[size_t(node)] = r;
      rec(idx + 1, rest - tad.marks[node] * r);
    }
    s[size_t(node)] = 0;
  };
  rec(0, target);
  return out;
}

inline std::set<std::vector<Int>> kac_set(const TwistedAffineDiagram& tad, const AdmissibleClass& cls) {
  std::set<std::vector<Int>> out;
  for (auto& real : cls.realizations)
    for (auto& v : kac_un(tad, real, cls.m)) out.insert(canonical_form(v).s);
  return out;
}

// ---------------------------------------------------------------------------
// Power-constraint filter for elliptic classes that are not Z-regular.

// Candidates: every normalized diagram of exact order m; retained iff for
// each constraint (k, D_k) the k-th power of the candidate agrees with D_k
// (compared at order m after scaling D_k up from order m/gcd(k,m)).
inline std::vector<KacVector> powers_filter(const RootSystem& rs, const WeylAutomorphism& w, Int m,
                                            const std::vector<std::pair<Int, KacVector>>& constraints) {
  if (!is_elliptic(w)) throw std::domain_error("powers filter expects an elliptic class");
  if (element_order(w) != m) throw std::domain_error("order mismatch");
  const TwistedAffineDiagram& tad = twisted_diagram(rs.type.family, rs.rank, 1);
  auto survivors = [&](const std::vector<KacVector>& candidates) {
    std::vector<KacVector> out;
    std::set<std::vector<Int>> dedup;
    for (const auto& cand : candidates) {
      bool ok = true;
      for (const auto& [k, dk] : constraints) {
        Int mk = vector_order(dk);
        if (m % mk != 0) throw std::domain_error("constraint order must divide m");
        KacVector scaled = dk;
        for (auto& x : scaled.s) x *= m / mk;
        KacVector powered = canonical_form(power_vector(cand, k));
        if (!(canonicalize(scaled) == powered)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      KacVector c = canonicalize(cand);
      if (dedup.insert(c.s).second) out.push_back(c);
    }
    return out;
  };
  // Classes lying in no proper reflection subgroup have 0/1 diagrams; fall
  // back to arbitrary labels only when nothing survives.
  std::vector<KacVector> zero_one;
  for (const auto& cand : normalized_diagrams(tad, m)) {
    bool flat = std::all_of(cand.s.begin(), cand.s.end(), [](Int x) { return x == 0 || x == 1; });
    if (flat) zero_one.push_back(cand);
  }
  auto out = survivors(zero_one);
  if (out.empty()) out = survivors(normalized_diagrams(tad, m));
  if (out.empty()) throw std::logic_error("power constraints are inconsistent");
  return out;
}

// ---------------------------------------------------------------------------
// Upper bound |C_W(w)| / |U_J| on the little Weyl group, where U_J is the
// subgroup of W fixing the span of R_J pointwise.

// Order of the pointwise stabilizer of span(R_J): automorphisms of the
// orthogonal-complement subsystem that extend by the identity to elements
// of W.  Requires span(R_J) + span(R_perp) to have full rank.
inline Int pointwise_stabilizer_order(const RootSystem& rs, const std::vector<int>& J,
                                      std::vector<Mat>* elements_out = nullptr) {
  int n = rs.rank;
  std::vector<Vec> jroots;
  for (int j : J) {
    Vec e(n, 0);
    e[j] = 1;
    jroots.push_back(e);
  }
  auto jcomps = subsystem_components(rs, jroots);
  std::vector<Vec> span_basis;
  for (auto& c : jcomps)
    for (auto& s : c.simples) span_basis.push_back(s);
  // complement subsystem
  std::vector<Vec> perp;
  for (const Vec& r : rs.roots) {
    bool ortho = true;
    for (auto& s : span_basis) ortho &= rs.pairing(s, rs.coroots[rs.root_index(r)]) == 0;
    if (ortho) perp.push_back(r);
  }
  if (perp.empty()) {
    if (elements_out) elements_out->clear();
    return 1;
  }
  auto pcomps = subsystem_components(rs, perp);
  std::vector<Vec> perp_basis;
  for (auto& c : pcomps)
    for (auto& s : c.simples) perp_basis.push_back(s);
  if (int(span_basis.size() + perp_basis.size()) != n)
    throw std::runtime_error("pointwise stabilizer unsupported: complement does not complete the span");
  // base change matrix: columns are the combined simple systems
  Mat B(n, n);
  {
    int col = 0;
    for (auto& v : span_basis) {
      for (int i = 0; i < n; ++i) B(i, col) = v[i];
      ++col;
    }
    for (auto& v : perp_basis) {
      for (int i = 0; i < n; ++i) B(i, col) = v[i];
      ++col;
    }
  }
  Int detB = mat_det(B);
  if (detB == 0) throw std::logic_error("degenerate basis");
  // enumerate Aut of the complement as a matrix group on its simple
  // coordinates: Weyl elements composed with graph automorphisms (component
  // permutations of equal types included via the graph automorphism search)
  int k = int(perp_basis.size());
  Mat subcartan(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) subcartan(i, j) = rs.pairing(perp_basis[size_t(j)], rs.coroots[rs.root_index(perp_basis[size_t(i)])]);
  // abstract reflection matrices on perp coordinates
  std::vector<Mat> gens;
  for (int i = 0; i < k; ++i) {
    Mat s = Mat::identity(k);
    for (int j = 0; j < k; ++j) s(i, j) -= subcartan(i, j);
    gens.push_back(s);
  }
  // graph automorphisms (including -1 realized as -w0 later: enumerate all
  // Cartan-preserving signed options by testing the full orthogonal
  // normalizer is overkill; graph automorphisms plus -identity suffice for
  // irreducible ADE complements and their products)
  std::vector<Mat> twists;
  {
    std::vector<int> perm(size_t(k), -1);
    std::vector<char> used(size_t(k), 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == k) {
        Mat t(k, k);
        for (int j = 0; j < k; ++j) t(perm[size_t(j)], j) = 1;
        twists.push_back(t);
        return;
      }
      for (int c = 0; c < k; ++c) {
        if (used[size_t(c)]) continue;
        bool ok = true;
        for (int q = 0; q < pos && ok; ++q)
          if (subcartan(c, perm[size_t(q)]) != subcartan(pos, q) || subcartan(perm[size_t(q)], c) != subcartan(q, pos))
            ok = false;
        if (!ok) continue;
        perm[size_t(pos)] = c;
        used[size_t(c)] = 1;
        rec(pos + 1);
        used[size_t(c)] = 0;
        perm[size_t(pos)] = -1;
      }
    };
    rec(0);
    size_t base = twists.size();
    Mat minus(k, k);
    for (int i = 0; i < k; ++i) minus(i, i) = -1;
    for (size_t t = 0; t < base; ++t) twists.push_back(minus * twists[t]);
  }
  // enumerate the Weyl group of the complement (orbit on matrices)
  std::set<std::vector<Int>> weyl;
  std::vector<Mat> frontier{Mat::identity(k)};
  weyl.insert(frontier[0].a);
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (auto& m : frontier)
      for (auto& g : gens) {
        Mat x = g * m;
        if (weyl.insert(x.a).second) next.push_back(x);
        if (weyl.size() > 2000000) throw std::runtime_error("complement Weyl group too large");
      }
    frontier = std::move(next);
  }
  // count elements of Aut(perp) whose extension by the identity lies in W
  Int count = 0;
  std::set<std::vector<Int>> seen_exts;
  for (auto& welt : weyl) {
    Mat wm(k, k);
    wm.a = welt;
    for (auto& tw : twists) {
      Mat g = tw * wm;
      if (!seen_exts.insert(g.a).second) continue;
      // extension: identity on span_basis, g on perp_basis, in ambient coords
      Mat D(n, n);
      int sb = int(span_basis.size());
      for (int i = 0; i < sb; ++i) D(i, i) = 1;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) D(sb + i, sb + j) = g(i, j);
      // ambient = (B D) B^{-1}, computed rationally; only integral results
      // can lie in W
      Mat amb(n, n);
      bool integral = true;
      Mat BD = B * D;
      static thread_local std::map<std::vector<Int>, std::vector<std::vector<Rat>>> binv_cache;
      auto it = binv_cache.find(B.a);
      if (it == binv_cache.end()) {
        std::vector<std::vector<Rat>> binv(B.a.size() ? size_t(n) : 0);
        for (int col = 0; col < n; ++col) {
          Vec e(n, 0);
          e[col] = 1;
          binv[size_t(col)] = solve_rational(B, e);  // column col of B^{-1}
        }
        it = binv_cache.emplace(B.a, std::move(binv)).first;
      }
      auto& binv = it->second;
      for (int i = 0; i < n && integral; ++i)
        for (int j = 0; j < n && integral; ++j) {
          Rat acc(0);
          for (int t = 0; t < n; ++t) acc = acc + Rat(BD(i, t)) * binv[size_t(j)][size_t(t)];
          if (!acc.is_integer()) integral = false;
          else amb(i, j) = acc.num;
        }
      if (!integral) continue;
      bool preserves = true;
      for (const Vec& r : rs.roots)
        if (!rs.is_root(amb.apply(r))) { preserves = false; break; }
      if (preserves && in_weyl_group(rs, amb)) {
        ++count;
        if (elements_out) elements_out->push_back(amb);
      }
    }
  }
  return count;
}

// Order of the pointwise stabilizer, enlarged by -w^{m/2} when that element
// lies in W: it scales the zeta-eigenspace by -zeta^{m/2} = 1, so it also
// acts trivially on the Cartan subspace.
inline Int trivial_on_cartan_subgroup_order(const RootSystem& rs, const WeylAutomorphism& w,
                                            const std::vector<int>& J, std::vector<Mat>* elements_out = nullptr) {
  std::vector<Mat> elements;
  pointwise_stabilizer_order(rs, J, &elements);
  Int m = element_order(w);
  if (m % 2 == 0) {
    Mat cand = mat_pow(w.matrix, m / 2);
    for (auto& x : cand.a) x = -x;
    bool preserves = true;
    for (const Vec& r : rs.roots)
      if (!rs.is_root(cand.apply(r))) { preserves = false; break; }
    if (preserves && in_weyl_group(rs, cand)) elements.push_back(cand);
  }
  // group closure
  std::set<std::vector<Int>> group;
  std::vector<Mat> frontier;
  group.insert(Mat::identity(rs.rank).a);
  for (auto& g : elements)
    if (group.insert(g.a).second) frontier.push_back(g);
  std::vector<Mat> gens = elements;
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (auto& x : frontier)
      for (auto& g : gens) {
        Mat y = g * x;
        if (group.insert(y.a).second) next.push_back(y);
        if (group.size() > 1000000) throw std::runtime_error("stabilizer closure too large");
      }
    frontier = std::move(next);
  }
  if (elements_out) {
    elements_out->clear();
    for (auto& a : group) {
      Mat g(rs.rank, rs.rank);
      g.a = a;
      elements_out->push_back(std::move(g));
    }
  }
  return Int(group.size());
}

inline Int c_j_upper_bound(const RootSystem& rs, const WeylAutomorphism& w, const std::vector<int>& J,
                           Int bound = default_enumeration_bound(),
                           const std::map<ConjugacyFingerprint, Int>* cache = nullptr) {
  Int c = centralizer_order(rs, w, bound, cache);
  Int u = trivial_on_cartan_subgroup_order(rs, w, J);
  if (c % u != 0) throw std::logic_error("stabilizer order does not divide the centralizer order");
  return c / u;
}

// ---------------------------------------------------------------------------
// Positive-rank tables.

struct GradingRecord {
  std::string type;
  int twist = 1;
  Int m = 1;
  std::vector<Int> kac;  // canonical normalized labels
  int rank = 0;
  std::vector<Int> degrees;
  std::string degrees_source = "computed";
  bool stable = false;
  std::optional<IsotropyInvariants> isotropy;
  std::uint64_t witness_hash = 0;
  std::vector<std::string> witness_levi;
  bool fallback_only = false;  // found only through non-regular factors
};

namespace detail {

// Is m the order of a regular element (in the eigenvector sense) of the
// given irreducible type?  Lehrer-Springer count equality.
inline bool regular_number(const TypeLabel& t, Int m) {
  return is_regular_number(root_system(t.family, t.rank).degrees, m);
}

// Can the diagram D (canonical, order m) be moved by the affine Weyl group
// to an un-normalized vector with 1 on every node of J (simple nodes)?
inline bool reachable_with_ones(const TwistedAffineDiagram& tad, const std::vector<Int>& target, Int m,
                                const std::vector<int>& J) {
  AdmissibleRealization real;
  AdmissibleFactor f;
  f.nodes = J;
  f.order = m;
  f.labels.assign(J.size(), 1);
  f.type = TypeLabel{Family::A, 1};  // unused
  real.factors.push_back(std::move(f));
  for (auto& v : kac_un(tad, real, m))
    if (canonical_form(v).s == target) return true;
  return false;
}

}  // namespace detail

// Degrees of the little Weyl group: those degrees of W_J divisible by m, for
// the best valid Levi J.  Validity: the pooled count of m-divisible degrees
// equals the rank, every component hosts a regular element of a divisor
// order (with full order m somewhere), and the diagram is reachable with 1's
// on J.  Among valid J the degree product is maximal.
inline std::vector<Int> little_weyl_degrees(const RootSystem& rs, const std::vector<int>& J, Int m) {
  std::vector<Int> out;
  if (J.empty()) return out;
  for (auto& comp : levi_subsystem(rs, J))
    for (Int d : root_system(comp.type.family, comp.type.rank).degrees)
      if (d % m == 0) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Int> degrees_for_record(const RootSystem& rs, const TwistedAffineDiagram& tad,
                                           const std::vector<Int>& kac, Int m, int rank) {
  if (m == 1) return rs.degrees;
  std::vector<Int> best;
  Int best_prod = -1;
  int n = rs.rank;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) J.push_back(i);
    auto comps = levi_subsystem(rs, J);
    // pooled m-divisible degree count must equal the rank
    int pooled = 0;
    Int prod = 1;
    std::vector<Int> degs;
    for (auto& c : comps)
      for (Int d : root_system(c.type.family, c.type.rank).degrees)
        if (d % m == 0) {
          ++pooled;
          prod = checked_mul(prod, d);
          degs.push_back(d);
        }
    if (pooled != rank) continue;
    if (best_prod >= prod) continue;
    // every component must host a regular element of order m_i | m with
    // lcm m over the components
    bool ok = true;
    Int l = 1;
    for (auto& c : comps) {
      Int mi_best = 0;
      for (Int mi = m; mi >= 2; --mi) {
        if (m % mi != 0) continue;
        if (detail::regular_number(c.type, mi)) { mi_best = mi; break; }
      }
      if (mi_best == 0) { ok = false; break; }
      l = lcm_int(l, mi_best);
      // components contributing m-divisible degrees must host order m itself
      bool has_m_deg = false;
      for (Int d : root_system(c.type.family, c.type.rank).degrees) has_m_deg |= (d % m == 0);
      if (has_m_deg && !detail::regular_number(c.type, m)) { ok = false; break; }
    }
    if (!ok || l != m) continue;
    std::vector<int> affine_nodes;  // layout positions of the simple nodes in J
    for (int i : J)
      for (size_t idx = 1; idx < tad.nodes.size(); ++idx)
        if (tad.nodes[idx].orbit_simples[0] == i) affine_nodes.push_back(int(idx));
    if (!detail::reachable_with_ones(tad, kac, m, affine_nodes)) continue;
    std::sort(degs.begin(), degs.end());
    best = degs;
    best_prod = prod;
  }
  return best;  // empty when no valid Levi exists
}

inline std::vector<GradingRecord> positive_rank_table(Family f, int rank, int jobs = 1) {
  const RootSystem& rs = root_system(f, rank);
  const TwistedAffineDiagram& tad = twisted_diagram(f, rank, 1);
  Int h = rs.degrees.back();
  auto regular_witnesses = regular_elliptic_witnesses_inner(rs);
  std::set<Int> stable_orders;
  for (auto& [m, w] : regular_witnesses) stable_orders.insert(m);

  struct DiagramInfo {
    int rank = 0;
    const AdmissibleClass* witness = nullptr;
    Int witness_m = 0;
    bool only_fallback = true;
  };

  // per order m: all admissible classes, then the union of their Kac sets
  std::vector<Int> orders;
  for (Int m = h; m >= 2; --m) orders.push_back(m);
  std::vector<std::vector<AdmissibleClass>> per_order(orders.size());
  {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= orders.size()) break;
        per_order[i] = admissible_elements(rs, orders[i], true, true);
      }
    };
    // component class tables are built lazily under a lock; warm them first
    component_classes(f, rank);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  std::vector<GradingRecord> out;
  for (size_t oi = 0; oi < orders.size(); ++oi) {
    Int m = orders[oi];
    auto& classes = per_order[oi];
    if (classes.empty()) continue;
    std::map<std::vector<Int>, DiagramInfo> diagrams;
    for (auto& cls : classes) {
      for (auto& key : kac_set(tad, cls)) {
        auto& info = diagrams[key];
        bool better = cls.rank > info.rank;
        bool same = cls.rank == info.rank;
        bool preferred = false;
        if (info.witness && same) {
          // prefer all-regular witnesses, then smaller Levi, then print order
          auto score = [](const AdmissibleClass& c) {
            return std::make_tuple(c.all_factors_z_regular() ? 0 : 1, c.witness_levi_order());
          };
          preferred = score(cls) < score(*info.witness);
        }
        if (better || !info.witness || preferred) {
          info.rank = std::max(info.rank, cls.rank);
          info.witness = &cls;
          info.witness_m = m;
        }
        info.only_fallback &= !cls.all_factors_z_regular();
      }
    }
    for (auto& [key, info] : diagrams) {
      GradingRecord rec;
      rec.type = rs.type.str();
      rec.twist = 1;
      rec.m = m;
      rec.kac = key;
      rec.rank = info.rank;
      rec.degrees = degrees_for_record(rs, tad, key, m, info.rank);
      rec.stable = stable_orders.count(m) && key == canonical_form(principal_kac(tad, m)).s;
      if (rec.stable)
        rec.isotropy = isotropy_invariants({&rs, regular_witnesses.at(m)}, Int(tad.omega.size()));
      rec.witness_hash = info.witness->print.hash();
      for (auto& fac : info.witness->realizations.front().factors) rec.witness_levi.push_back(fac.type.str());
      rec.fallback_only = info.only_fallback;
      out.push_back(std::move(rec));
    }
  }
  // the order-1 grading
  {
    GradingRecord rec;
    rec.type = rs.type.str();
    rec.m = 1;
    rec.kac = canonical_form(principal_kac(tad, 1)).s;
    rec.rank = rank;
    rec.degrees = rs.degrees;
    rec.stable = false;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const GradingRecord& a, const GradingRecord& b) {
    if (a.m != b.m) return a.m > b.m;
    return a.kac < b.kac;
  });
  return out;
}

// The unique canonical Kac diagram of (the lift of) an elliptic class.
inline KacVector elliptic_class_diagram(const RootSystem& rs, const WeylAutomorphism& w) {
  const TwistedAffineDiagram& tad = twisted_diagram(rs.type.family, rs.rank, 1);
  Int m = element_order(w);
  if (is_z_regular(w)) return canonical_form(principal_kac(tad, m));
  // try a proper pseudo-Levi realization
  auto fp = fingerprint(w);
  for (auto& cls : admissible_elements(rs, m, false, false)) {
    if (!(cls.print == fp)) continue;
    auto set = kac_set(tad, cls);
    if (set.size() != 1) throw std::logic_error("elliptic class with non-unique diagram");
    return KacVector{&tad, *set.begin()};
  }
  // genuinely ambient non-regular class: filter by elliptic powers
  std::vector<std::pair<Int, KacVector>> constraints;
  for (Int k = 2; k < m; ++k) {
    if (m % k != 0) continue;
    Mat p = mat_pow(w.matrix, k);
    WeylAutomorphism wk{&rs, p};
    if (!is_elliptic(wk)) continue;
    constraints.emplace_back(k, elliptic_class_diagram(rs, wk));
  }
  auto filtered = powers_filter(rs, w, m, constraints);
  if (filtered.size() != 1)
    throw std::logic_error("power constraints do not determine the diagram of an elliptic class");
  return filtered.front();
}

inline const std::vector<Int>& class_diagram(const ComponentClass& cls) {
  static std::map<std::pair<std::string, std::uint64_t>, std::vector<Int>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto key = std::make_pair(cls.type.str(), cls.print.hash());
  auto it = cache.find(key);
  if (it == cache.end()) {
    const RootSystem& rs = root_system(cls.type.family, cls.type.rank);
    WeylAutomorphism w{&rs, class_matrix(rs, cls.refl_roots)};
    it = cache.emplace(key, elliptic_class_diagram(rs, w).s).first;
  }
  return it->second;
}

}  // namespace vinberg

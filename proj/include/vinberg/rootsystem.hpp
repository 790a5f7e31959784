#pragma once

// Finite irreducible reduced root systems with exact integer data.
// Roots are stored in simple-root coordinates, coroots in simple-coroot
// coordinates; the pairing runs through the Cartan matrix, so no inner
// product is ever chosen.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "numeric.hpp"

namespace vinberg {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline char family_char(Family f) { return char(f); }

struct TypeLabel {
  Family family;
  int rank;
  std::string str() const { return std::string(1, family_char(family)) + std::to_string(rank); }
  friend bool operator==(const TypeLabel& a, const TypeLabel& b) { return a.family == b.family && a.rank == b.rank; }
  friend bool operator<(const TypeLabel& a, const TypeLabel& b) {
    return a.family != b.family ? a.family < b.family : a.rank < b.rank;
  }
};

// Cartan matrix with the convention A[i][j] = <alpha_j, alpha_i-check>.
// Bourbaki numbering throughout.
inline Mat cartan_matrix(Family f, int n) {
  auto chain = [](Mat& A, int i, int j) { A(i, j) = A(j, i) = -1; };
  Mat A = Mat::identity(n);
  for (int i = 0; i < n; ++i) A(i, i) = 2;
  switch (f) {
    case Family::A:
      if (n < 1) throw std::invalid_argument("A_n needs n >= 1");
      for (int i = 0; i + 1 < n; ++i) chain(A, i, i + 1);
      break;
    case Family::B:
      if (n < 2) throw std::invalid_argument("B_n needs n >= 2");
      for (int i = 0; i + 1 < n; ++i) chain(A, i, i + 1);
      A(n - 1, n - 2) = -2;  // <alpha_{n-1}, alpha_n-check> = -2 (alpha_n short)
      A(n - 2, n - 1) = -1;
      break;
    case Family::C:
      if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
      for (int i = 0; i + 1 < n; ++i) chain(A, i, i + 1);
      A(n - 2, n - 1) = -2;  // alpha_n long
      A(n - 1, n - 2) = -1;
      break;
    case Family::D:
      if (n < 3) throw std::invalid_argument("D_n needs n >= 3");
      for (int i = 0; i + 2 < n; ++i) chain(A, i, i + 1);
      chain(A, n - 3, n - 1);
      break;
    case Family::E: {
      if (n < 6 || n > 8) throw std::invalid_argument("E_n needs n in {6,7,8}");
      // chain 1-3-4-5-6(-7)(-8), node 2 attached to 4
      chain(A, 0, 2);
      chain(A, 2, 3);
      chain(A, 3, 4);
      chain(A, 4, 5);
      if (n >= 7) chain(A, 5, 6);
      if (n >= 8) chain(A, 6, 7);
      chain(A, 1, 3);
      break;
    }
    case Family::F:
      if (n != 4) throw std::invalid_argument("F needs rank 4");
      chain(A, 0, 1);
      chain(A, 2, 3);
      A(2, 1) = -2;  // <alpha_2, alpha_3-check> = -2 (alpha_3 short)
      A(1, 2) = -1;
      break;
    case Family::G:
      if (n != 2) throw std::invalid_argument("G needs rank 2");
      A(0, 1) = -3;  // <alpha_2, alpha_1-check> = -3 (alpha_1 short)
      A(1, 0) = -1;
      break;
  }
  return A;
}

struct RootSystem {
  TypeLabel type;
  int rank = 0;
  Mat cartan;                      // A[i][j] = <alpha_j, alpha_i-check>
  std::vector<Vec> roots;          // simple-root coordinates
  std::vector<Vec> coroots;        // coroot of roots[k], simple-coroot coordinates
  std::vector<int> positive;       // indices into roots
  std::map<Vec, int> index;        // root vector -> index
  int highest = -1, lowest = -1;   // indices of highest/lowest root
  std::vector<std::vector<Rat>> fundamental_coweights;  // coroot-basis coords
  std::vector<Rat> rho_check;                           // sum of the above
  std::vector<Int> degrees, exponents;

  int root_index(const Vec& v) const {
    auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  }
  bool is_root(const Vec& v) const { return index.count(v) != 0; }

  // <v, w-check> with v in root coords, w-check in coroot coords.
  Int pairing(const Vec& v, const Vec& wcheck) const {
    Int s = 0;
    for (int k = 0; k < rank; ++k) {
      if (wcheck[k] == 0) continue;
      Int row = 0;
      for (int i = 0; i < rank; ++i) row += cartan(k, i) * v[i];
      s += wcheck[k] * row;
    }
    return s;
  }
  // <v, alpha_i-check> = (cartan row i) . v
  Int simple_pairing(const Vec& v, int i) const {
    Int s = 0;
    for (int j = 0; j < rank; ++j) s += cartan(i, j) * v[j];
    return s;
  }
  Int height(const Vec& v) const {
    Int s = 0;
    for (Int x : v) s += x;
    return s;
  }
};

// Builds the root system by reflection closure from the simple roots.
inline RootSystem build_root_system(Family f, int n) {
  if (f == Family::A && n < 1) throw std::invalid_argument("invalid type");
  if (f == Family::B && n < 2) throw std::invalid_argument("invalid type");
  if (f == Family::C && n < 3) throw std::invalid_argument("invalid type");
  if (f == Family::D && n < 4) throw std::invalid_argument("invalid type");

  RootSystem rs;
  rs.type = {f, n};
  rs.rank = n;
  rs.cartan = cartan_matrix(f, n);

  std::vector<Vec> queue;
  std::vector<Vec> cqueue;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0), ec(n, 0);
    e[i] = 1;
    ec[i] = 1;
    queue.push_back(e);
    cqueue.push_back(ec);
  }
  std::map<Vec, Vec> closure;  // root -> coroot
  for (int i = 0; i < n; ++i) closure[queue[i]] = cqueue[i];
  for (size_t head = 0; head < queue.size(); ++head) {
    Vec v = queue[head], vc = cqueue[head];
    for (int i = 0; i < n; ++i) {
      Int p = rs.simple_pairing(v, i);
      Vec w = v;
      w[i] -= p;
      if (closure.count(w)) continue;
      // s_i on coroots: wc -> wc - <alpha_i, wc> alpha_i-check
      Int pc = 0;
      for (int k = 0; k < n; ++k) pc += rs.cartan(k, i) * vc[k];
      Vec wc = vc;
      wc[i] -= pc;
      closure[w] = wc;
      queue.push_back(w);
      cqueue.push_back(wc);
    }
  }

  for (auto& [v, vc] : closure) {
    rs.index[v] = int(rs.roots.size());
    rs.roots.push_back(v);
    rs.coroots.push_back(vc);
  }
  Int best = 0;
  for (size_t k = 0; k < rs.roots.size(); ++k) {
    const Vec& v = rs.roots[k];
    bool pos = false;
    for (Int x : v)
      if (x != 0) { pos = x > 0; break; }
    if (pos) rs.positive.push_back(int(k));
    Int h = rs.height(v);
    if (h > best) { best = h; rs.highest = int(k); }
  }
  rs.lowest = rs.root_index(-rs.roots[rs.highest]);

  // Fundamental coweights: solve <alpha_i, w_j> = delta_ij in coroot coords.
  // With w = sum c_k acheck_k this reads (A^T c)_i = delta_ij.
  Mat At = rs.cartan.transpose();
  rs.rho_check.assign(n, Rat(0));
  for (int j = 0; j < n; ++j) {
    Vec b(n, 0);
    b[j] = 1;
    auto cw = solve_rational(At, b);
    for (int k = 0; k < n; ++k) rs.rho_check[k] = rs.rho_check[k] + cw[k];
    rs.fundamental_coweights.push_back(std::move(cw));
  }

  // Exponents from the Coxeter element s_1 s_2 ... s_n acting on root coords.
  Mat cox = Mat::identity(n);
  for (int i = 0; i < n; ++i) {
    Mat s = Mat::identity(n);
    for (int j = 0; j < n; ++j) s(i, j) -= rs.cartan(i, j);
    cox = cox * s;
  }
  Int h = 0;
  {
    Mat p = cox;
    h = 1;
    while (p != Mat::identity(n)) {
      p = p * cox;
      ++h;
      if (h > 1000) throw std::logic_error("runaway Coxeter order");
    }
  }
  auto factors = cyclotomic_factor(char_poly(cox), h);
  for (auto [d, mult] : factors) {
    // Each Phi_d factor contributes the exponents {j*h/d : gcd(j,d)=1}.
    for (int rep = 0; rep < mult; ++rep)
      for (int j = 1; j <= d; ++j)
        if (std::gcd(j, d) == 1) rs.exponents.push_back(Int(j) * h / d);
  }
  std::sort(rs.exponents.begin(), rs.exponents.end());
  for (Int e : rs.exponents) rs.degrees.push_back(e + 1);
  return rs;
}

inline const RootSystem& root_system(Family f, int n) {
  static std::map<TypeLabel, RootSystem> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  TypeLabel t{f, n};
  auto it = cache.find(t);
  if (it == cache.end()) it = cache.emplace(t, build_root_system(f, n)).first;
  return it->second;
}

inline Int weyl_order(Family f, int n) {
  Int w = 1;
  for (Int d : root_system(f, n).degrees) w = checked_mul(w, d);
  return w;
}

// ---------------------------------------------------------------------------
// Sub-root systems spanned by arbitrary root subsets (Levis when the subset
// consists of simple roots, pseudo-Levis when the affine node joins in).

struct SubsystemComponent {
  TypeLabel type;
  std::vector<Vec> simples;        // simple roots of the component, ambient coords
  std::vector<int> ambient_roots;  // all roots of the component, ambient indices
};

// Identifies the type of an irreducible Cartan matrix given as a symmetrizable
// integer matrix (diagonal 2).  `a` uses the same convention as RootSystem.
// Returns the type and the permutation mapping our Bourbaki simple ordering
// onto the rows of `a`.
inline std::optional<std::vector<int>> match_cartan(const Mat& a, const Mat& b, std::vector<int>& perm, std::vector<char>& used, size_t pos) {
  int n = a.n;
  if (pos == size_t(n)) return perm;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    bool ok = true;
    for (size_t k = 0; k <= pos && ok; ++k) {
      int o = (k == pos) ? cand : perm[k];
      if (b(int(pos), int(k)) != a(cand, o) || b(int(k), int(pos)) != a(o, cand)) ok = false;
    }
    if (!ok) continue;
    perm[pos] = cand;
    used[cand] = 1;
    if (auto r = match_cartan(a, b, perm, used, pos + 1)) return r;
    used[cand] = 0;
    perm[pos] = -1;
  }
  return std::nullopt;
}

// Returns (type, perm) with perm[i] = row of `a` playing Bourbaki node i+1.
inline std::pair<TypeLabel, std::vector<int>> identify_cartan(const Mat& a) {
  int n = a.n;
  std::vector<Family> fams;
  switch (n) {
    case 1: fams = {Family::A}; break;
    case 2: fams = {Family::A, Family::B, Family::G}; break;
    case 3: fams = {Family::A, Family::B, Family::C}; break;
    case 4: fams = {Family::A, Family::B, Family::C, Family::D, Family::F}; break;
    default: fams = {Family::A, Family::B, Family::C, Family::D, Family::E}; break;
  }
  for (Family f : fams) {
    if (f == Family::E && (n < 6 || n > 8)) continue;
    Mat b;
    try {
      b = cartan_matrix(f, n);
    } catch (const std::invalid_argument&) {
      continue;
    }
    std::vector<int> perm(n, -1);
    std::vector<char> used(n, 0);
    if (auto r = match_cartan(a, b, perm, used, 0)) return {TypeLabel{f, n}, *r};
  }
  throw std::logic_error("unrecognized Cartan matrix");
}

// Decomposes the sub-root system generated by `gens` (ambient root coords)
// into irreducible components with Bourbaki-ordered simple systems.
inline std::vector<SubsystemComponent> subsystem_components(const RootSystem& rs, const std::vector<Vec>& gens) {
  if (gens.empty()) return {};
  // Closure under mutual reflections.
  std::set<Vec> closed(gens.begin(), gens.end());
  std::vector<Vec> q(gens.begin(), gens.end());
  for (size_t h = 0; h < q.size(); ++h) {
    for (size_t g = 0; g < q.size(); ++g) {
      const Vec& beta = q[g];
      int bi = rs.root_index(beta);
      Vec refl = q[h] - rs.pairing(q[h], rs.coroots[bi]) * beta;
      if (!closed.count(refl)) {
        closed.insert(refl);
        q.push_back(refl);
      }
    }
  }
  // Positive part with respect to the ambient order, then the simple system:
  // positives not expressible as sums of two positives.
  std::vector<Vec> pos;
  for (const Vec& v : closed) {
    bool p = false;
    for (Int x : v)
      if (x != 0) { p = x > 0; break; }
    if (p) pos.push_back(v);
  }
  std::set<Vec> posset(pos.begin(), pos.end());
  std::vector<Vec> simples;
  for (const Vec& v : pos) {
    bool decomposable = false;
    for (const Vec& u : pos) {
      if (u == v) continue;
      Vec diff = v - u;
      if (posset.count(diff)) { decomposable = true; break; }
    }
    if (!decomposable) simples.push_back(v);
  }
  // Split into connected components via the pairing graph.
  int k = int(simples.size());
  std::vector<int> comp(k, -1);
  int nc = 0;
  for (int i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j)
        if (comp[j] < 0 && rs.pairing(simples[x], rs.coroots[rs.root_index(simples[j])]) != 0) {
          comp[j] = nc;
          stack.push_back(j);
        }
    }
    ++nc;
  }
  std::vector<SubsystemComponent> out;
  for (int c = 0; c < nc; ++c) {
    std::vector<Vec> cs;
    for (int i = 0; i < k; ++i)
      if (comp[i] == c) cs.push_back(simples[i]);
    int cn = int(cs.size());
    Mat sub(cn, cn);
    for (int i = 0; i < cn; ++i)
      for (int j = 0; j < cn; ++j) sub(i, j) = rs.pairing(cs[j], rs.coroots[rs.root_index(cs[i])]);
    auto [type, perm] = identify_cartan(sub);
    SubsystemComponent sc;
    sc.type = type;
    sc.simples.resize(cn);
    for (int i = 0; i < cn; ++i) sc.simples[i] = cs[perm[i]];
    out.push_back(std::move(sc));
  }
  // Assign each closed root to the unique component whose span contains it.
  for (auto& sc : out) sc.ambient_roots.clear();
  for (const Vec& v : closed) {
    for (auto& sc : out) {
      int cn = int(sc.simples.size());
      Mat m(rs.rank, cn + 1);
      for (int j = 0; j < cn; ++j)
        for (int i = 0; i < rs.rank; ++i) m(i, j) = sc.simples[j][i];
      for (int i = 0; i < rs.rank; ++i) m(i, cn) = v[i];
      if (mat_rank(m) == cn) {
        sc.ambient_roots.push_back(rs.root_index(v));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SubsystemComponent& x, const SubsystemComponent& y) {
    if (x.type.rank != y.type.rank) return x.type.rank > y.type.rank;
    if (!(x.type == y.type)) return x.type < y.type;
    return x.simples < y.simples;
  });
  return out;
}

inline std::vector<SubsystemComponent> levi_subsystem(const RootSystem& rs, const std::vector<int>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("empty node set");
  std::vector<Vec> gens;
  for (int j : nodes) {
    Vec e(rs.rank, 0);
    e[j] = 1;
    gens.push_back(e);
  }
  return subsystem_components(rs, gens);
}

// ---------------------------------------------------------------------------
// Pinned (diagram) automorphisms.

struct PinnedAutomorphism {
  std::vector<int> node_perm;  // image of simple node i
  int order = 1;
  Mat matrix;                  // action on the root lattice in simple coords
};

inline PinnedAutomorphism pinned_automorphism(const RootSystem& rs, const std::vector<int>& perm) {
  int n = rs.rank;
  if (int(perm.size()) != n) throw std::invalid_argument("bad permutation size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rs.cartan(perm[i], perm[j]) != rs.cartan(i, j))
        throw std::invalid_argument("permutation does not preserve the Cartan matrix");
  PinnedAutomorphism p;
  p.node_perm = perm;
  p.matrix = Mat(n, n);
  for (int j = 0; j < n; ++j) p.matrix(perm[j], j) = 1;
  std::vector<int> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = i;
  int e = 0;
  do {
    for (int i = 0; i < n; ++i) cur[i] = perm[cur[i]];
    ++e;
  } while (![&] {
    for (int i = 0; i < n; ++i)
      if (cur[i] != i) return false;
    return true;
  }());
  p.order = e;
  return p;
}

inline PinnedAutomorphism identity_pin(const RootSystem& rs) {
  std::vector<int> id(rs.rank);
  for (int i = 0; i < rs.rank; ++i) id[i] = i;
  return pinned_automorphism(rs, id);
}

// The standard nontrivial diagram automorphisms.
inline PinnedAutomorphism standard_twist(const RootSystem& rs, int order) {
  int n = rs.rank;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  Family f = rs.type.family;
  if (order == 1) return identity_pin(rs);
  if (order == 2) {
    if (f == Family::A && n >= 2) {
      for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
    } else if (f == Family::D && n >= 4) {
      std::swap(p[n - 2], p[n - 1]);
    } else if (f == Family::E && n == 6) {
      p = {5, 1, 4, 3, 2, 0};  // alpha1<->alpha6, alpha3<->alpha5
    } else {
      throw std::invalid_argument("no order-2 twist for this type");
    }
  } else if (order == 3) {
    if (f == Family::D && n == 4) {
      p = {2, 1, 3, 0};  // alpha1 -> alpha3 -> alpha4 -> alpha1
    } else {
      throw std::invalid_argument("no order-3 twist for this type");
    }
  } else {
    throw std::invalid_argument("twist order must be 1, 2 or 3");
  }
  return pinned_automorphism(rs, p);
}

}  // namespace vinberg

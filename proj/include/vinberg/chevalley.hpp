#pragma once

// Small-rank Chevalley Lie algebras with exact integer structure constants,
// graded by a normalized Kac vector; the rank of a grading is measured as
// the codimension of a generic orbit in the degree-one piece.  Test-only
// verification machinery.
//
// Simply-laced algebras are built from a bimultiplicative sign cocycle on
// the root lattice; the other types arise as fixed-point subalgebras of a
// pinned diagram automorphism of a simply-laced cover.

#include <random>

#include "kac.hpp"

namespace vinberg {

struct ChevalleyAlgebra {
  TypeLabel type;
  const RootSystem* rs = nullptr;  // abstract root system of `type`
  int dim = 0;                     // rank + number of roots
  // bracket[i][j]: sparse row of [b_i, b_j] over the integer basis
  // b_0..b_{rank-1} = Cartan generators, b_{rank+k} = root vector for root k
  std::vector<std::vector<std::vector<std::pair<int, Int>>>> bracket;

  int cartan_index(int i) const { return i; }
  int root_index(int k) const { return rs->rank + k; }
};

namespace detail {

// Sign cocycle for a simply-laced root lattice: bimultiplicative with
// eps(a,b) eps(b,a) = (-1)^{(a,b)} and eps(a,a) = -1 on roots.
struct SignCocycle {
  const RootSystem* rs;
  Mat pairing_matrix;  // (alpha_i, alpha_j) = Cartan entries (simply laced)

  explicit SignCocycle(const RootSystem& r) : rs(&r) { pairing_matrix = r.cartan; }

  int eps_basis(int i, int j) const {
    if (i < j) return 1;
    if (i == j) return -1;
    return (pairing_matrix(i, j) % 2 == 0) ? 1 : -1;
  }
  int operator()(const Vec& a, const Vec& b) const {
    long exp = 0;
    for (int i = 0; i < rs->rank; ++i)
      for (int j = 0; j < rs->rank; ++j)
        if (a[i] != 0 && b[j] != 0 && eps_basis(i, j) < 0 && ((a[i] * b[j]) % 2 != 0)) ++exp;
    return exp % 2 == 0 ? 1 : -1;
  }
};

}  // namespace detail

inline ChevalleyAlgebra chevalley_simply_laced(Family f, int rank) {
  const RootSystem& rs = root_system(f, rank);
  ChevalleyAlgebra alg;
  alg.type = rs.type;
  alg.rs = &rs;
  int nr = int(rs.roots.size());
  alg.dim = rank + nr;
  detail::SignCocycle eps(rs);

  alg.bracket.assign(size_t(alg.dim), std::vector<std::vector<std::pair<int, Int>>>(size_t(alg.dim)));
  auto set = [&](int i, int j, std::vector<std::pair<int, Int>> v) {
    alg.bracket[size_t(i)][size_t(j)] = v;
    for (auto& [k, c] : v) c = -c;
    alg.bracket[size_t(j)][size_t(i)] = std::move(v);
  };
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < nr; ++k) {
      // [h_i, e_a] = <a, alpha_i-check> e_a
      Int c = rs.simple_pairing(rs.roots[k], i);
      if (c != 0) set(alg.cartan_index(i), alg.root_index(k), {{alg.root_index(k), c}});
    }
  for (int a = 0; a < nr; ++a)
    for (int b = a + 1; b < nr; ++b) {
      const Vec& va = rs.roots[a];
      const Vec& vb = rs.roots[b];
      Vec sum = va + vb;
      if (is_zero(sum)) {
        // [e_a, e_-a] = eps(a,-a) * h_a  with h_a given by the coroot coords
        std::vector<std::pair<int, Int>> row;
        const Vec& cr = rs.coroots[a];
        int s = eps(va, vb);
        for (int i = 0; i < rank; ++i)
          if (cr[i] != 0) row.push_back({alg.cartan_index(i), s * cr[i]});
        set(alg.root_index(a), alg.root_index(b), std::move(row));
      } else if (rs.is_root(sum)) {
        int k = rs.root_index(sum);
        Int n = eps(va, vb);  // simply laced: |N| = 1
        set(alg.root_index(a), alg.root_index(b), {{alg.root_index(k), n}});
      }
    }
  return alg;
}

namespace detail {

inline std::vector<std::pair<int, Int>> apply_ad(const ChevalleyAlgebra& alg, int i,
                                                 const std::vector<std::pair<int, Int>>& x) {
  std::map<int, Int> acc;
  for (auto& [j, c] : x)
    for (auto& [k, d] : alg.bracket[size_t(i)][size_t(j)]) acc[k] += c * d;
  std::vector<std::pair<int, Int>> out;
  for (auto& [k, c] : acc)
    if (c != 0) out.push_back({k, c});
  return out;
}

}  // namespace detail

// Fixed-point subalgebra of a pinned diagram automorphism of a simply-laced
// algebra, expressed on the folded (restricted) root system.  `remap` sends
// Bourbaki nodes of the folded type to sorted orbit positions.
inline ChevalleyAlgebra chevalley_folded(Family cover_f, int cover_rank, int twist, const TypeLabel& folded,
                                         std::vector<int> remap = {}) {
  const RootSystem& cover = root_system(cover_f, cover_rank);
  ChevalleyAlgebra big = chevalley_simply_laced(cover_f, cover_rank);
  PinnedAutomorphism pin = standard_twist(cover, twist);

  // signs of sigma on root vectors: sigma(e_a) = c_a e_{pi(a)}
  int nr = int(cover.roots.size());
  auto perm = root_permutation(cover, pin.matrix);
  std::vector<Int> c(size_t(nr), 0);
  std::vector<int> by_height(nr, 0);
  for (int k = 0; k < nr; ++k) by_height[size_t(k)] = k;
  std::sort(by_height.begin(), by_height.end(), [&](int x, int y) {
    Int hx = cover.height(cover.roots[x]), hy = cover.height(cover.roots[y]);
    return std::llabs(hx) != std::llabs(hy) ? std::llabs(hx) < std::llabs(hy) : hx > hy;
  });
  for (int k : by_height) {
    const Vec& v = cover.roots[k];
    Int h = cover.height(v);
    if (h == 1) {
      c[size_t(k)] = 1;  // pinned on the simple root vectors
      continue;
    }
    if (h > 1) {
      // decompose v = alpha_i + rest
      for (int i = 0; i < cover.rank && c[size_t(k)] == 0; ++i) {
        if (v[i] == 0) continue;
        Vec e(cover.rank, 0);
        e[i] = 1;
        Vec rest = v - e;
        if (!cover.is_root(rest)) continue;
        int a = cover.root_index(e), b = cover.root_index(rest);
        if (c[size_t(b)] == 0) continue;
        // N(a,b) e_v = [e_a, e_b]; sigma both sides
        auto row = big.bracket[size_t(big.root_index(a))][size_t(big.root_index(b))];
        auto rowp = big.bracket[size_t(big.root_index(perm[size_t(a)]))][size_t(big.root_index(perm[size_t(b)]))];
        Int n = row.at(0).second, np = rowp.at(0).second;
        c[size_t(k)] = c[size_t(a)] * c[size_t(b)] * np / n;
      }
    } else {
      // negative root: [e_v, e_-v] relation: sigma preserves the pairing
      int neg = cover.root_index(-v);
      if (c[size_t(neg)] != 0) {
        // eps(v,-v) h = [e_v, e_-v]; applying sigma fixes c_v c_-v = eps(pi v, -pi v)/eps(v,-v)
        detail::SignCocycle eps(cover);
        Int s = eps(cover.roots[neg], -cover.roots[neg]);
        Int sp = eps(cover.roots[perm[size_t(neg)]], -cover.roots[perm[size_t(neg)]]);
        c[size_t(k)] = (sp / s) * c[size_t(neg)];
      }
    }
    if (c[size_t(k)] == 0) throw std::logic_error("sign cascade failed");
  }

  // theta-orbits on cover roots; invariant vectors are orbit sums weighted by
  // the sign cascade along the orbit (the product around each orbit is 1).
  std::vector<int> orbit_id(size_t(nr), -1);
  std::vector<std::vector<std::pair<int, Int>>> orbit_vectors;  // (cover root, weight)
  for (int k = 0; k < nr; ++k) {
    if (orbit_id[size_t(k)] >= 0) continue;
    std::vector<std::pair<int, Int>> vec;
    int j = k;
    Int w = 1;
    Int around = 1;
    while (true) {
      vec.push_back({j, w});
      around = w * c[size_t(j)];
      int j2 = perm[size_t(j)];
      if (j2 == k) break;
      w = w * c[size_t(j)];
      j = j2;
    }
    if (around != 1) throw std::logic_error("orbit sign is nontrivial; no invariant vector");
    for (auto& [r, wt] : vec) orbit_id[size_t(r)] = int(orbit_vectors.size());
    orbit_vectors.push_back(std::move(vec));
  }

  const RootSystem& frs = root_system(folded.family, folded.rank);
  ChevalleyAlgebra alg;
  alg.type = folded;
  alg.rs = &frs;
  int fr = frs.rank;
  int fnr = int(frs.roots.size());
  alg.dim = fr + fnr;
  if (int(orbit_vectors.size()) != fnr) throw std::logic_error("folded root count mismatch");

  // simple-node orbits of the pin, sorted: folded simple i <-> orbit i
  std::vector<std::vector<int>> node_orbits;
  {
    std::vector<char> seen(size_t(cover.rank), 0);
    for (int i = 0; i < cover.rank; ++i) {
      if (seen[size_t(i)]) continue;
      std::vector<int> orb;
      int j = i;
      while (!seen[size_t(j)]) {
        seen[size_t(j)] = 1;
        orb.push_back(j);
        j = pin.node_perm[size_t(j)];
      }
      std::sort(orb.begin(), orb.end());
      node_orbits.push_back(std::move(orb));
    }
    std::sort(node_orbits.begin(), node_orbits.end());
    if (int(node_orbits.size()) != fr) throw std::logic_error("folded rank mismatch");
    if (!remap.empty()) {
      std::vector<std::vector<int>> re(node_orbits.size());
      for (int i = 0; i < fr; ++i) re[size_t(i)] = node_orbits[size_t(remap[size_t(i)])];
      node_orbits = std::move(re);
    }
  }
  // folded coordinates of an orbit: sum over the orbit of cover coordinates,
  // grouped by simple-node orbit, divided by the node-orbit multiplicity in
  // the orbit sum (integral by construction)
  auto folded_root_of_orbit = [&](int oid) {
    Vec total(size_t(cover.rank), 0);
    for (auto& [r, w] : orbit_vectors[size_t(oid)]) total = total + cover.roots[size_t(r)];
    Vec out(size_t(fr), 0);
    Int osz = Int(orbit_vectors[size_t(oid)].size());
    for (int i = 0; i < fr; ++i) {
      // all members of a node orbit carry equal totals
      Int t = total[size_t(node_orbits[size_t(i)][0])];
      Int denom = osz / 1;
      (void)denom;
      if (t * Int(node_orbits[size_t(i)].size()) % osz != 0) throw std::logic_error("non-integral folded root");
      out[size_t(i)] = t * Int(node_orbits[size_t(i)].size()) / osz;
    }
    if (!frs.is_root(out)) throw std::logic_error("folded vector is not a root");
    return out;
  };
  std::vector<int> orbit_to_folded(orbit_vectors.size());
  for (size_t o = 0; o < orbit_vectors.size(); ++o) orbit_to_folded[o] = frs.root_index(folded_root_of_orbit(int(o)));

  // basis of the fixed algebra over the big one
  // cartan: sums over node orbits; roots: weighted orbit sums
  std::vector<std::vector<std::pair<int, Int>>> basis(size_t(alg.dim));
  for (int i = 0; i < fr; ++i)
    for (int n : node_orbits[size_t(i)]) basis[size_t(i)].push_back({big.cartan_index(n), 1});
  for (size_t o = 0; o < orbit_vectors.size(); ++o) {
    int target = alg.root_index(orbit_to_folded[o]);
    for (auto& [r, w] : orbit_vectors[o]) basis[size_t(target)].push_back({big.root_index(int(r)), w});
  }

  // expansion of a big-algebra vector over the fixed basis
  auto project = [&](const std::vector<std::pair<int, Int>>& x) {
    std::map<int, Int> coords(x.begin(), x.end());
    std::vector<std::pair<int, Int>> out;
    std::map<int, Int> taken;
    for (int bi = 0; bi < alg.dim; ++bi) {
      // leading big-basis element of basis[bi]
      int lead = basis[size_t(bi)][0].first;
      Int lw = basis[size_t(bi)][0].second;
      auto it = coords.find(lead);
      if (it == coords.end() || it->second == 0) continue;
      if (it->second % lw != 0) throw std::logic_error("projection failed");
      Int coeff = it->second / lw;
      for (auto& [bj, w] : basis[size_t(bi)]) coords[bj] -= coeff * w;
      out.push_back({bi, coeff});
    }
    for (auto& [k, v] : coords)
      if (v != 0) throw std::logic_error("vector is not in the fixed subalgebra");
    return out;
  };

  alg.bracket.assign(size_t(alg.dim), std::vector<std::vector<std::pair<int, Int>>>(size_t(alg.dim)));
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i + 1; j < alg.dim; ++j) {
      std::map<int, Int> acc;
      for (auto& [bi, ci] : basis[size_t(i)])
        for (auto& [bj, cj] : basis[size_t(j)])
          for (auto& [bk, ck] : big.bracket[size_t(bi)][size_t(bj)]) acc[bk] += ci * cj * ck;
      std::vector<std::pair<int, Int>> flat;
      for (auto& [k, v] : acc)
        if (v != 0) flat.push_back({k, v});
      auto folded_row = project(flat);
      alg.bracket[size_t(i)][size_t(j)] = folded_row;
      for (auto& [k, v] : folded_row) v = -v;
      alg.bracket[size_t(j)][size_t(i)] = std::move(folded_row);
    }
  return alg;
}

inline ChevalleyAlgebra chevalley_algebra(Family f, int rank) {
  if (rank > 4) throw std::invalid_argument("oracle supports rank <= 4 only");
  switch (f) {
    case Family::A:
    case Family::D:
      return chevalley_simply_laced(f, rank);
    case Family::E:
      throw std::invalid_argument("oracle supports rank <= 4 only");
    case Family::B:
      if (rank == 2) return chevalley_folded(Family::A, 3, 2, TypeLabel{Family::B, 2}, {1, 0});
      if (rank == 3) return chevalley_folded(Family::D, 4, 2, TypeLabel{Family::B, 3});
      if (rank == 4) return chevalley_folded(Family::D, 5, 2, TypeLabel{Family::B, 4});
      break;
    case Family::C:
      if (rank == 3) return chevalley_folded(Family::A, 5, 2, TypeLabel{Family::C, 3});
      if (rank == 4) return chevalley_folded(Family::A, 7, 2, TypeLabel{Family::C, 4});
      break;
    case Family::F:
      return chevalley_folded(Family::E, 6, 2, TypeLabel{Family::F, 4}, {1, 3, 2, 0});
    case Family::G:
      return chevalley_folded(Family::D, 4, 3, TypeLabel{Family::G, 2});
  }
  throw std::invalid_argument("unsupported oracle type");
}

// checks the Jacobi identity on all basis triples (test support)
inline bool jacobi_holds(const ChevalleyAlgebra& alg) {
  auto ad = [&](int i, const std::vector<std::pair<int, Int>>& x) { return detail::apply_ad(alg, i, x); };
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i + 1; j < alg.dim; ++j)
      for (int k = j + 1; k < alg.dim; ++k) {
        std::map<int, Int> acc;
        for (auto& [t, c] : ad(i, alg.bracket[size_t(j)][size_t(k)])) acc[t] += c;
        for (auto& [t, c] : ad(j, alg.bracket[size_t(k)][size_t(i)])) acc[t] += c;
        for (auto& [t, c] : ad(k, alg.bracket[size_t(i)][size_t(j)])) acc[t] += c;
        for (auto& [t, c] : acc)
          if (c != 0) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Grading by a normalized inner Kac vector and the numeric rank.

struct GradedAlgebra {
  const ChevalleyAlgebra* alg = nullptr;
  Int m = 1;
  std::vector<Int> degree;  // degree per basis element (mod m)
};

inline GradedAlgebra grade_by_kac(const ChevalleyAlgebra& alg, const KacVector& v) {
  if (v.diagram->e != 1) throw std::domain_error("inner gradings only");
  if (!is_normalized(v)) throw std::domain_error("normalized vectors only");
  GradedAlgebra g;
  g.alg = &alg;
  g.m = vector_order(v);
  g.degree.assign(size_t(alg.dim), 0);
  // labels on the simple nodes in Bourbaki order
  std::vector<Int> s(size_t(alg.rs->rank), 0);
  for (size_t i = 1; i < v.diagram->nodes.size(); ++i)
    s[size_t(v.diagram->nodes[i].orbit_simples[0])] = v.s[i];
  for (size_t k = 0; k < alg.rs->roots.size(); ++k) {
    Int d = 0;
    for (int i = 0; i < alg.rs->rank; ++i) d += alg.rs->roots[k][i] * s[size_t(i)];
    g.degree[size_t(alg.root_index(int(k)))] = ((d % g.m) + g.m) % g.m;
  }
  return g;
}

// dim of the degree-d piece
inline int graded_dim(const GradedAlgebra& g, Int d) {
  int n = 0;
  for (Int x : g.degree)
    if (x == ((d % g.m) + g.m) % g.m) ++n;
  return n;
}

// rank = dim g_1 - max over sampled x in g_1 of dim [g_0, x]
inline int numeric_rank(const GradedAlgebra& g, int trials, std::uint64_t seed = 20240801) {
  const ChevalleyAlgebra& alg = *g.alg;
  std::vector<int> basis0, basis1;
  for (int i = 0; i < alg.dim; ++i) {
    if (g.degree[size_t(i)] == 0) basis0.push_back(i);
    if (g.degree[size_t(i)] == 1 % g.m) basis1.push_back(i);
  }
  if (basis1.empty()) return 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> dist(-100, 100);
  std::map<int, int> pos1;
  for (size_t i = 0; i < basis1.size(); ++i) pos1[basis1[i]] = int(i);
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::pair<int, Int>> x;
    for (int b : basis1) x.push_back({b, dist(rng)});
    // matrix of ad(x): g_0 -> g_1
    Mat mat(int(basis1.size()), int(basis0.size()));
    for (size_t j = 0; j < basis0.size(); ++j) {
      auto img = detail::apply_ad(alg, basis0[j], x);
      for (auto& [k, c] : img) {
        auto it = pos1.find(k);
        if (it == pos1.end()) throw std::logic_error("grading is not respected");
        mat(it->second, int(j)) = -c;  // [g0, x] = -[x, g0]
      }
    }
    best = std::max(best, mat_rank_mod_p(mat));
  }
  return int(basis1.size()) - best;
}

}  // namespace vinberg

#pragma once

// Shared test support: independently derived fixtures for the classical
// stable tables (closed-form label patterns and isotropy orders), plus small
// helpers used by both the unit suites and the acceptance binary.

#include <set>

#include "vinberg/classify.hpp"

namespace vinberg::testing {

struct ClassicalRow {
  Int m;
  std::vector<Int> labels;
  Int s0;
};

// Positions are affine layout indices (node 0 first).
inline std::vector<ClassicalRow> classical_stable_expected(Family f, int n, int twist) {
  std::vector<ClassicalRow> rows;
  auto zeros = [&](int len) { return std::vector<Int>(size_t(len), 0); };
  if (twist == 1 && f == Family::B) {
    for (Int k = 1; k <= n; ++k) {
      if (n % k != 0) continue;
      std::vector<Int> s;
      if (k == 1) {
        s.assign(size_t(n + 1), 1);
      } else if (k == 2) {
        s = zeros(n + 1);
        s[0] = s[1] = 1;
        for (int i = 3; i <= n; i += 2) s[size_t(i)] = 1;
      } else if (k % 2 == 0) {
        s = zeros(n + 1);
        for (Int j = 0; j < n / k; ++j) s[size_t(k / 2 + j * k)] = 1;
      } else {
        s = zeros(n + 1);
        for (Int j = 0; j < n / k; ++j) s[size_t((k + 1) / 2 + j * k)] = 1;
      }
      rows.push_back({2 * n / k, s, k == 1 ? 1 : Int(1) << (k - 1)});
    }
    return rows;
  }
  if (twist == 1 && f == Family::C) {
    for (Int k = 1; k <= n; ++k) {
      if (n % k != 0) continue;
      std::vector<Int> s = zeros(n + 1);
      s[0] = s[size_t(n)] = 1;
      for (Int j = 1; j < n / k; ++j) s[size_t(j * k)] = 1;
      rows.push_back({2 * n / k, s, k == 1 ? 1 : Int(1) << (k - 1)});
    }
    return rows;
  }
  if (twist == 1 && f == Family::D) {
    // even k | n and odd l | n-1
    std::set<std::pair<Int, std::vector<Int>>> seen;
    auto push = [&](Int m, std::vector<Int> s, Int s0) {
      if (seen.insert({m, s}).second) rows.push_back({m, s, s0});
    };
    push(2 * n - 2, std::vector<Int>(size_t(n + 1), 1), 1);
    if (n % 2 == 0) {
      std::vector<Int> s = zeros(n + 1);
      s[0] = s[1] = s[size_t(n - 1)] = s[size_t(n)] = 1;
      for (int i = 3; i <= n - 2; i += 2) s[size_t(i)] = 1;
      push(n, s, 1);
    }
    for (Int k = 4; k <= n; k += 2) {
      if (n % k != 0) continue;
      std::vector<Int> s = zeros(n + 1);
      for (Int j = 0; j < n / k; ++j) s[size_t(k / 2 + j * k)] = 1;
      push(2 * n / k, s, Int(1) << (k - 2));
    }
    for (Int l = 3; l <= n - 1; l += 2) {
      if ((n - 1) % l != 0) continue;
      std::vector<Int> s = zeros(n + 1);
      for (Int j = 0; j < (n - 1) / l; ++j) s[size_t((l + 1) / 2 + j * l)] = 1;
      push((2 * n - 2) / l, s, Int(1) << (l - 1));
    }
    return rows;
  }
  if (twist == 2 && f == Family::D) {
    std::set<std::pair<Int, std::vector<Int>>> seen;
    auto push = [&](Int m, std::vector<Int> s, Int s0) {
      if (seen.insert({m, s}).second) rows.push_back({m, s, s0});
    };
    push(2 * n, std::vector<Int>(size_t(n), 1), 1);
    for (Int l = 3; l <= n; l += 2) {
      if (n % l != 0) continue;
      std::vector<Int> s = zeros(n);
      for (Int j = 0; j < n / l; ++j) s[size_t((l - 1) / 2 + j * l)] = 1;
      push(2 * n / l, s, Int(1) << (l - 1));
    }
    for (Int k = 2; k <= n - 1; k += 2) {
      if ((n - 1) % k != 0) continue;
      std::vector<Int> s = zeros(n);
      for (Int j = 0; j < (n - 1) / k; ++j) s[size_t(k / 2 + j * k)] = 1;
      push((2 * n - 2) / k, s, Int(1) << k);
    }
    if (n % 2 == 1) {
      // covered by k = 2 above (same diagram and order); assert presence
      std::vector<Int> s = zeros(n);
      for (int i = 1; i < n; i += 2) s[size_t(i)] = 1;
      bool found = false;
      for (auto& r : rows) found |= (r.m == n - 1 && r.labels == s);
      if (!found) rows.push_back({n - 1, s, 4});
    }
    return rows;
  }
  if (twist == 2 && f == Family::A && n % 2 == 0) {
    int half = n / 2;  // diagram has half+1 nodes
    std::set<std::pair<Int, std::vector<Int>>> seen;
    auto push = [&](Int m, std::vector<Int> s, Int s0) {
      if (seen.insert({m, s}).second) rows.push_back({m, s, s0});
    };
    push(2 * (n + 1), std::vector<Int>(size_t(half + 1), 1), 1);
    {
      std::vector<Int> s = zeros(half + 1);
      s[0] = 1;
      push(2, s, Int(1) << n);
    }
    for (Int k = 1; 2 * k + 1 <= n + 1; ++k) {
      if ((n + 1) % (2 * k + 1) != 0) continue;
      std::vector<Int> s = zeros(half + 1);
      s[0] = 1;
      for (Int j = 1; j <= (half - k) / (2 * k + 1); ++j) s[size_t(j * (2 * k + 1))] = 1;
      push(2 * (n + 1) / (2 * k + 1), s, Int(1) << (2 * k));
    }
    for (Int k = 1; k <= half; ++k) {
      if (half % k != 0 || (half / k) % 2 == 0 || half / k == 1) continue;
      std::vector<Int> s = zeros(half + 1);
      s[0] = 1;
      for (Int j = 1; j <= (half - k) / (2 * k); ++j) s[size_t(2 * k * j)] = 1;
      push(2 * half / k, s, Int(1) << (2 * k));
    }
    return rows;
  }
  if (twist == 2 && f == Family::A && n % 2 == 1) {
    int half = (n + 1) / 2;  // diagram has half+1 nodes
    std::set<std::pair<Int, std::vector<Int>>> seen;
    auto push = [&](Int m, std::vector<Int> s, Int s0) {
      if (seen.insert({m, s}).second) rows.push_back({m, s, s0});
    };
    push(2 * n, std::vector<Int>(size_t(half + 1), 1), 1);
    if (half % 2 == 1) {
      std::vector<Int> s = zeros(half + 1);
      s[0] = s[1] = 1;
      for (int i = 3; i <= half; i += 2) s[size_t(i)] = 1;
      push(2 * half, s, 1);
    }
    for (Int k = 1; 2 * k + 1 <= n; ++k) {
      if (n % (2 * k + 1) != 0) continue;
      std::vector<Int> s = zeros(half + 1);
      if (half == 2) {
        // the fork collapses for the rank-3 case; the label sits on the
        // middle node of the chain
        s[1] = 1;
      } else {
        for (Int j = 0; k + 1 + j * (2 * k + 1) <= half; ++j) s[size_t(k + 1 + j * (2 * k + 1))] = 1;
      }
      push(2 * n / (2 * k + 1), s, Int(1) << (2 * k));
    }
    return rows;
  }
  throw std::invalid_argument("no classical pattern for this type");
}

// Seeded xorshift for the fuzz suites.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t operator()() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  Int range(Int lo, Int hi) { return lo + Int((*this)() % std::uint64_t(hi - lo + 1)); }
};

inline KacVector random_vector(const TwistedAffineDiagram& tad, Rng& rng) {
  KacVector v;
  v.diagram = &tad;
  while (true) {
    v.s.clear();
    for (size_t i = 0; i < tad.nodes.size(); ++i) v.s.push_back(rng.range(-6, 6));
    Int sum = 0;
    for (size_t i = 0; i < v.s.size(); ++i) sum += tad.marks[i] * v.s[i];
    if (sum > 0) return v;
  }
}

// Alternate pivot policy: reflect at the most negative label (largest index
// on ties).
inline KacVector normalize_alt(const KacVector& v) {
  KacVector cur = v;
  long guard = 0;
  while (true) {
    int j = -1;
    for (size_t i = 0; i < cur.s.size(); ++i)
      if (cur.s[i] < 0 && (j < 0 || cur.s[i] <= cur.s[size_t(j)])) j = int(i);
    if (j < 0) break;
    cur = reflect_at(cur, j);
    if (++guard > 1000000) throw std::logic_error("alt normalization did not terminate");
  }
  return cur;
}

// Rational kernel test: does any root vanish on the fixed coweight space?
inline bool some_root_vanishes_on_fixed_space(const RootSystem& rs, const Mat& m) {
  // fixed coweights: kernel of (m^T - 1) over Q; root alpha vanishes on it
  // iff A*alpha (the pairing functional) lies in the row space of (m^T - 1).
  int n = rs.rank;
  Mat k = m.transpose() - Mat::identity(n);
  int base_rank = mat_rank(k);
  if (base_rank == n) return false;  // elliptic: fixed space is zero, nothing vanishes
  for (const Vec& alpha : rs.roots) {
    // fixed coweights in fundamental-coweight coordinates: the functional of
    // a root is its own coordinate row
    Mat ext(n + 1, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ext(i, j) = k(i, j);
    for (int j = 0; j < n; ++j) ext(n, j) = alpha[j];
    if (mat_rank(ext) == base_rank) return true;  // functional dependent on the rows
  }
  return false;
}

}  // namespace vinberg::testing

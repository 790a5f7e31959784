#pragma once

// Exact small-scale integer linear algebra: vectors, square matrices,
// determinants, characteristic polynomials, cyclotomic factorization and
// Smith normal form.  Everything is int64; ranks never exceed 9 here and
// all intermediate values stay far below overflow (asserted).

#include <algorithm>
#include <array>
#include <mutex>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace vinberg {

using Int = std::int64_t;

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 mul overflow");
  return r;
}
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 add overflow");
  return r;
}

inline Int gcd_int(Int a, Int b) { return std::gcd(std::llabs(a), std::llabs(b)); }
inline Int lcm_int(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::llabs(a) / gcd_int(a, b), std::llabs(b));
}

// ---------------------------------------------------------------------------
// Rational numbers (small, always reduced, denominator > 0).

struct Rat {
  Int num = 0, den = 1;
  Rat() = default;
  Rat(Int n) : num(n), den(1) {}
  Rat(Int n, Int d) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    Int g = gcd_int(num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  friend Rat operator+(Rat a, Rat b) { return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)), checked_mul(a.den, b.den)); }
  friend Rat operator-(Rat a, Rat b) { return a + Rat(-b.num, b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den)); }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw std::domain_error("division by zero");
    return Rat(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  bool is_integer() const { return den == 1; }
};

// ---------------------------------------------------------------------------
// Integer vectors and matrices.

using Vec = std::vector<Int>;

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline Vec operator*(Int c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}
inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}
inline Int content(const Vec& a) {
  Int g = 0;
  for (Int x : a) g = gcd_int(g, x);
  return g;
}

struct Mat {
  int n = 0;                 // rows
  int m = 0;                 // cols
  std::vector<Int> a;        // row-major

  Mat() = default;
  Mat(int rows, int cols) : n(rows), m(cols), a(size_t(rows) * cols, 0) {}
  static Mat identity(int k) {
    Mat I(k, k);
    for (int i = 0; i < k; ++i) I(i, i) = 1;
    return I;
  }
  Int& operator()(int i, int j) { return a[size_t(i) * m + j]; }
  Int operator()(int i, int j) const { return a[size_t(i) * m + j]; }
  friend bool operator==(const Mat& x, const Mat& y) { return x.n == y.n && x.m == y.m && x.a == y.a; }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
  friend bool operator<(const Mat& x, const Mat& y) { return x.a < y.a; }

  Vec apply(const Vec& v) const {
    assert(int(v.size()) == m);
    Vec r(n, 0);
    for (int i = 0; i < n; ++i) {
      Int s = 0;
      for (int j = 0; j < m; ++j) s += a[size_t(i) * m + j] * v[j];
      r[i] = s;
    }
    return r;
  }
  Mat transpose() const {
    Mat t(m, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
};

inline Mat operator*(const Mat& x, const Mat& y) {
  assert(x.m == y.n);
  Mat r(x.n, y.m);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.m; ++k) {
      Int v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.m; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}
inline Mat operator-(const Mat& x, const Mat& y) {
  Mat r(x.n, x.m);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}
inline Mat operator+(const Mat& x, const Mat& y) {
  Mat r(x.n, x.m);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat mat_pow(Mat x, Int e) {
  assert(x.n == x.m);
  Mat r = Mat::identity(x.n);
  while (e > 0) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

// Fraction-free Gaussian elimination (Bareiss).  Returns determinant for
// square input; `rank_out` receives the rank if non-null.
inline Int bareiss_det(Mat w, int* rank_out = nullptr) {
  int n = w.n, m = w.m;
  Int prev = 1;
  int sign = 1, row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (w(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < m; ++j) std::swap(w(piv, j), w(row, j));
      sign = -sign;
    }
    for (int i = row + 1; i < n; ++i) {
      for (int j = col + 1; j < m; ++j)
        w(i, j) = (checked_mul(w(row, col), w(i, j)) - checked_mul(w(i, col), w(row, j))) / prev;
      w(i, col) = 0;
    }
    prev = w(row, col);
    ++row;
  }
  if (rank_out) *rank_out = row;
  if (n != m || row < n) return 0;
  // After full elimination the last pivot equals the determinant up to sign.
  return sign * prev;
}

inline int mat_rank(const Mat& w) {
  int r = 0;
  bareiss_det(w, &r);
  return r;
}

// Rank over the prime field F_p for a fixed large p (exceeds every Coxeter
// number in play); used where fraction-free elimination would overflow.
inline int mat_rank_mod_p(const Mat& w, Int p = 2147483647) {
  int n = w.n, m = w.m;
  std::vector<Int> a(w.a.size());
  for (size_t i = 0; i < w.a.size(); ++i) a[i] = ((w.a[i] % p) + p) % p;
  auto at = [&](int i, int j) -> Int& { return a[size_t(i) * m + j]; };
  auto inv = [&](Int x) {
    Int r = 1, b = x, e = p - 2;
    while (e) {
      if (e & 1) r = Int((__int128(r) * b) % p);
      b = Int((__int128(b) * b) % p);
      e >>= 1;
    }
    return r;
  };
  int row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m; ++j) std::swap(at(piv, j), at(row, j));
    Int pi = inv(at(row, col));
    for (int i = row + 1; i < n; ++i) {
      if (at(i, col) == 0) continue;
      Int f = Int((__int128(at(i, col)) * pi) % p);
      for (int j = col; j < m; ++j) at(i, j) = Int(((at(i, j) - __int128(f) * at(row, j)) % p + p) % p);
    }
    ++row;
  }
  return row;
}

// Rank via fraction-free elimination in 128-bit with per-row content
// stripping; safe for mid-sized matrices with small entries.
inline int mat_rank_wide(const Mat& w) {
  int n = w.n, m = w.m;
  std::vector<__int128> a(w.a.begin(), w.a.end());
  auto at = [&](int i, int j) -> __int128& { return a[size_t(i) * m + j]; };
  auto strip = [&](int i) {
    __int128 g = 0;
    for (int j = 0; j < m; ++j) {
      __int128 x = at(i, j) < 0 ? -at(i, j) : at(i, j);
      while (x) {
        __int128 t = g % x;
        g = x;
        x = t;
      }
    }
    if (g > 1)
      for (int j = 0; j < m; ++j) at(i, j) /= g;
  };
  int row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m; ++j) std::swap(at(piv, j), at(row, j));
    for (int i = row + 1; i < n; ++i) {
      if (at(i, col) == 0) continue;
      __int128 p = at(row, col), q = at(i, col);
      for (int j = 0; j < m; ++j) at(i, j) = at(i, j) * p - at(row, j) * q;
      strip(i);
    }
    ++row;
  }
  return row;
}

inline Int mat_det(const Mat& w) {
  assert(w.n == w.m);
  return bareiss_det(w);
}

// ---------------------------------------------------------------------------
// Integer polynomials, stored by ascending degree.  Monic operations only
// need exact division, which is checked.

struct Poly {
  std::vector<Int> c;  // c[k] = coefficient of t^k
  Poly() = default;
  explicit Poly(std::vector<Int> v) : c(std::move(v)) { trim(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return int(c.size()) - 1; }
  Int eval(Int x) const {
    Int r = 0;
    for (int k = degree(); k >= 0; --k) r = checked_add(checked_mul(r, x), c[k]);
    return r;
  }
  friend bool operator==(const Poly& p, const Poly& q) { return p.c == q.c; }
};

inline Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.c.empty() || q.c.empty()) return Poly();
  std::vector<Int> r(p.c.size() + q.c.size() - 1, 0);
  for (size_t i = 0; i < p.c.size(); ++i)
    for (size_t j = 0; j < q.c.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(p.c[i], q.c[j]));
  return Poly(std::move(r));
}

// Divides p by monic q; returns true and the quotient when the division is
// exact over the integers.
inline bool poly_divide_exact(const Poly& p, const Poly& q, Poly* quot) {
  assert(!q.c.empty() && q.c.back() == 1);
  std::vector<Int> rem = p.c;
  int dq = q.degree();
  if (p.degree() < dq) return false;
  std::vector<Int> out(p.degree() - dq + 1, 0);
  for (int k = p.degree(); k >= dq; --k) {
    Int coef = rem[k];
    if (coef == 0) continue;
    out[k - dq] = coef;
    for (int j = 0; j <= dq; ++j) rem[k - dq + j] -= coef * q.c[j];
  }
  for (Int x : rem)
    if (x != 0) return false;
  if (quot) *quot = Poly(std::move(out));
  return true;
}

// Characteristic polynomial det(tI - M) by the Faddeev-LeVerrier recursion;
// all divisions are exact.
inline Poly char_poly(const Mat& M) {
  assert(M.n == M.m);
  int n = M.n;
  std::vector<Int> c(n + 1, 0);
  c[n] = 1;
  Mat Mk = Mat::identity(n);
  for (int k = 1; k <= n; ++k) {
    Mk = M * Mk;
    Int tr = 0;
    for (int i = 0; i < n; ++i) tr += Mk(i, i);
    Int ck = -tr / k;
    assert(-tr % k == 0);
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) Mk(i, i) += ck;
  }
  return Poly(std::move(c));
}

// Cyclotomic polynomial Phi_d, computed by exact division of t^d - 1.
inline const Poly& cyclotomic(int d) {
  static std::map<int, Poly> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<Int> xn(d + 1, 0);
  xn[0] = -1;
  xn[d] = 1;
  Poly p(std::move(xn));
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    Poly q;
    bool ok = poly_divide_exact(p, cyclotomic(e), &q);
    assert(ok);
    (void)ok;
    p = q;
  }
  return cache.emplace(d, std::move(p)).first->second;
}

// Multiplicity of Phi_d in p.
inline int cyclotomic_multiplicity(const Poly& p, int d) {
  int mult = 0;
  Poly cur = p, quot;
  const Poly& phi = cyclotomic(d);
  while (cur.degree() >= phi.degree() && poly_divide_exact(cur, phi, &quot)) {
    ++mult;
    cur = quot;
  }
  return mult;
}

// Factors p (assumed to be a product of cyclotomics, e.g. the characteristic
// polynomial of a finite-order lattice automorphism) as {d: multiplicity}.
inline std::map<int, int> cyclotomic_factor(const Poly& p, Int order_hint) {
  std::map<int, int> out;
  Poly cur = p;
  for (Int d = 1; d <= order_hint; ++d) {
    if (order_hint % d != 0) continue;
    Poly quot;
    int mult = 0;
    while (cur.degree() >= 1 && poly_divide_exact(cur, cyclotomic(int(d)), &quot)) {
      ++mult;
      cur = quot;
    }
    if (mult > 0) out[int(d)] = mult;
    if (cur.degree() == 0) break;
  }
  if (cur.degree() != 0) throw std::logic_error("characteristic polynomial not a product of cyclotomics");
  return out;
}

// |det(1 - M)| for a finite-order M given its cyclotomic factorization:
// Phi_d(1) is p for d = p^k, 1 for d with two prime factors, 0 for d = 1.
inline Int det_one_minus_from_factors(const std::map<int, int>& f) {
  Int det = 1;
  for (auto [d, mult] : f) {
    Int phi1 = cyclotomic(d).eval(1);
    for (int i = 0; i < mult; ++i) det = checked_mul(det, phi1);
  }
  return std::llabs(det);
}

// ---------------------------------------------------------------------------
// Smith normal form: returns the diagonal elementary divisors d1 | d2 | ...
// of an integer matrix (nonzero ones only, each positive).

inline std::vector<Int> smith_normal_form(Mat w) {
  int n = w.n, m = w.m;
  std::vector<Int> divisors;
  int r0 = 0, c0 = 0;
  while (r0 < n && c0 < m) {
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = r0; i < n; ++i)
      for (int j = c0; j < m; ++j)
        if (w(i, j) != 0 && (best == 0 || std::llabs(w(i, j)) < best)) {
          best = std::llabs(w(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    for (int j = 0; j < m; ++j) std::swap(w(pi, j), w(r0, j));
    for (int i = 0; i < n; ++i) std::swap(w(i, pj), w(i, c0));
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = r0 + 1; i < n; ++i) {
        Int q = w(i, c0) / w(r0, c0);
        if (q != 0)
          for (int j = c0; j < m; ++j) w(i, j) -= q * w(r0, j);
        if (w(i, c0) != 0) {
          for (int j = 0; j < m; ++j) std::swap(w(i, j), w(r0, j));
          clean = false;
        }
      }
      for (int j = c0 + 1; j < m; ++j) {
        Int q = w(r0, j) / w(r0, c0);
        if (q != 0)
          for (int i = r0; i < n; ++i) w(i, j) -= q * w(i, c0);
        if (w(r0, j) != 0) {
          for (int i = 0; i < n; ++i) std::swap(w(i, j), w(i, c0));
          clean = false;
        }
      }
    }
    divisors.push_back(std::llabs(w(r0, c0)));
    ++r0;
    ++c0;
  }
  // Fix the divisibility chain d1 | d2 | ... by gcd/lcm sweeps.
  for (size_t i = 0; i < divisors.size(); ++i)
    for (size_t j = i + 1; j < divisors.size(); ++j) {
      Int g = gcd_int(divisors[i], divisors[j]);
      Int l = divisors[i] / g * divisors[j];
      divisors[i] = g;
      divisors[j] = l;
    }
  return divisors;
}

// Solves A x = b over the rationals (A square nonsingular).  Used for
// fundamental coweights; sizes are tiny so Cramer via Bareiss is fine.
inline std::vector<Rat> solve_rational(const Mat& A, const Vec& b) {
  assert(A.n == A.m);
  Int d = mat_det(A);
  if (d == 0) throw std::domain_error("singular system");
  std::vector<Rat> x(A.n);
  for (int j = 0; j < A.n; ++j) {
    Mat Aj = A;
    for (int i = 0; i < A.n; ++i) Aj(i, j) = b[i];
    x[j] = Rat(mat_det(Aj), d);
  }
  return x;
}

}  // namespace vinberg

#pragma once

#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace palrich {

/// Integer polynomial, coefficients ascending by degree, no trailing zeros.
using PolyZ = std::vector<mpz_class>;
using PolyQ = std::vector<mpq_class>;

inline void poly_trim(PolyZ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline void poly_trim(PolyQ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_degree(const PolyZ& p) { return static_cast<int>(p.size()) - 1; }
inline int poly_degree(const PolyQ& p) { return static_cast<int>(p.size()) - 1; }

template <typename P>
P poly_add(const P& a, const P& b) {
  P c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] += b[i];
  }
  poly_trim(c);
  return c;
}

template <typename P>
P poly_sub(const P& a, const P& b) {
  P c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] -= b[i];
  }
  poly_trim(c);
  return c;
}

template <typename P>
P poly_mul(const P& a, const P& b) {
  if (a.empty() || b.empty()) return {};
  P c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  poly_trim(c);
  return c;
}

inline mpq_class poly_eval(const PolyZ& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + mpq_class(p[i]);
  return acc;
}

inline mpq_class poly_eval(const PolyQ& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline PolyQ to_rational(const PolyZ& p) {
  PolyQ q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = mpq_class(p[i]);
  return q;
}

/// t^{d+1} - 2 t^d - 1, the factor of the characteristic polynomial carrying
/// the dominant eigenvalue.
inline PolyZ poly_f(int d) {
  PolyZ p(d + 2, 0);
  p[0] = -1;
  p[d] = -2;
  p[d + 1] = 1;
  return p;
}

/// t^d - t^{d-1} - ... - t - 1, the cofactor carrying the second-largest root.
inline PolyZ poly_g(int d) {
  PolyZ p(d + 1, -1);
  p[d] = 1;
  return p;
}

/// t^{D-1} (t-2)^2 - 1 = t^{D+1} - 4 t^D + 4 t^{D-1} - 1.
inline PolyZ poly_asymptotic(int D) {
  PolyZ p(D + 2, 0);
  p[0] = -1;
  p[D - 1] = 4;
  p[D] = -4;
  p[D + 1] = 1;
  return p;
}

/// Arithmetic in Q[t]/(m) for a monic modulus m; equality is decidable exactly.
class QuotientRing {
 public:
  explicit QuotientRing(PolyZ modulus) : mod_(to_rational(modulus)) {
    if (mod_.empty() || mod_.back() != 1)
      throw std::invalid_argument("quotient modulus must be monic");
  }

  int degree() const { return poly_degree(mod_); }

  PolyQ reduce(PolyQ p) const {
    const int m = degree();
    poly_trim(p);
    while (poly_degree(p) >= m) {
      mpq_class lead = p.back();
      int shift = poly_degree(p) - m;
      for (int i = 0; i <= m; ++i) p[i + shift] -= lead * mod_[i];
      poly_trim(p);
    }
    return p;
  }

  PolyQ mul(const PolyQ& a, const PolyQ& b) const { return reduce(poly_mul(a, b)); }
  PolyQ add(const PolyQ& a, const PolyQ& b) const { return poly_add(a, b); }
  PolyQ sub(const PolyQ& a, const PolyQ& b) const { return poly_sub(a, b); }
  bool is_zero(const PolyQ& a) const { return reduce(a).empty(); }
  bool equal(const PolyQ& a, const PolyQ& b) const { return is_zero(poly_sub(a, b)); }

  /// representative of t^k
  PolyQ monomial(int k) const {
    PolyQ p(k + 1, 0);
    p[k] = 1;
    return reduce(std::move(p));
  }

 private:
  PolyQ mod_;
};

}  // namespace palrich

#pragma once

#include <stdexcept>

#include "palrich/polynomial.hpp"

namespace palrich {

/// Certified enclosure with exact rational endpoints.
struct Interval {
  mpq_class lo, hi;

  mpq_class width() const { return hi - lo; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
};

/// Hard floor for interval refinement; undecided comparisons below this width
/// raise instead of silently passing.
inline const mpq_class& min_refine_width() {
  static const mpq_class w = []() -> mpq_class {
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2048);
    return mpq_class(1) / mpq_class(den);
  }();
  return w;
}

/// Real algebraic number: integer minimal polynomial plus an isolating
/// interval whose endpoints give opposite polynomial signs.
class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;

  AlgebraicNumber(PolyZ minpoly, mpq_class lo, mpq_class hi)
      : poly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (sign_at(lo_) == 0) hi_ = lo_;
    else if (sign_at(hi_) == 0) lo_ = hi_;
    else if (sign_at(lo_) * sign_at(hi_) >= 0)
      throw std::invalid_argument("no sign change on the isolating interval");
  }

  const PolyZ& minimal_polynomial() const { return poly_; }
  const mpq_class& lo() const { return lo_; }
  const mpq_class& hi() const { return hi_; }
  mpq_class width() const { return hi_ - lo_; }
  Interval interval() const { return {lo_, hi_}; }
  mpq_class midpoint() const { return (lo_ + hi_) / 2; }

  /// Bisect until the enclosure is narrower than `target`.
  void refine_to(const mpq_class& target) {
    while (hi_ - lo_ > target) bisect();
  }

  void bisect() {
    if (lo_ == hi_) return;
    mpq_class mid = (lo_ + hi_) / 2;
    int sm = sign_at(mid);
    if (sm == 0) {
      lo_ = hi_ = mid;
      return;
    }
    if (sm == sign_at(lo_))
      lo_ = mid;
    else
      hi_ = mid;
  }

 private:
  int sign_at(const mpq_class& x) const { return sgn(poly_eval(poly_, x)); }

  PolyZ poly_;
  mpq_class lo_, hi_;
};

}  // namespace palrich

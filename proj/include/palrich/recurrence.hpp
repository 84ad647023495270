#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "palrich/algebraic.hpp"
#include "palrich/matrix.hpp"
#include "palrich/morphism.hpp"
#include "palrich/words.hpp"

namespace palrich {

/// Incidence matrix of the morphism fixing the (2d+1)-letter sequence:
/// first row all ones, subdiagonal ones, bottom-right corner 2.
inline IntMatrix phi_incidence(int d) {
  const int n = 2 * d + 1;
  IntMatrix M(n, n);
  for (int j = 0; j < n; ++j) M(0, j) = 1;
  for (int j = 0; j + 1 < n; ++j) M(j + 1, j) = 1;
  M(n - 1, n - 1) = 2;
  return M;
}

/// Letter weights (1, ..., 1, 2^0, 2^1, ..., 2^d): image lengths of the
/// weighted morphism on the (2d+1)-letter alphabet.
inline std::vector<mpz_class> weight_vector(int d) {
  std::vector<mpz_class> h;
  for (int i = 0; i < d; ++i) h.emplace_back(1);
  for (int j = 0; j <= d; ++j) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, j);
    h.push_back(p);
  }
  return h;
}

inline ParikhVector unit_vector(int dim, int i) {
  ParikhVector v(dim, 0);
  v[i] = 1;
  return v;
}

inline ParikhVector vec_add(const ParikhVector& a, const ParikhVector& b) {
  ParikhVector c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

inline bool vec_leq(const ParikhVector& a, const ParikhVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline mpz_class dot(const std::vector<mpz_class>& a, const ParikhVector& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// f_0 = 0, f_n = M f_{n-1} + e_0 (+ 2 e_{2d} when n is a positive multiple of 2d).
inline ParikhVector f_vector(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("f_vector needs d >= 1, n >= 0");
  const int dim = 2 * d + 1;
  IntMatrix M = phi_incidence(d);
  ParikhVector f(dim, 0);
  for (int m = 1; m <= n; ++m) {
    f = M * f;
    f[0] += 1;
    if (m % (2 * d) == 0) f[dim - 1] += 2;
  }
  return f;
}

/// Exact rational matrices of the closed form f_n = A M^n e_{2d} - B_i e_0.
class ClosedFormKit {
 public:
  explicit ClosedFormKit(int d) : d_(d), M_(phi_incidence(d)) {
    const int dim = 2 * d + 1;
    RatMatrix Mq = palrich::to_rational(M_);
    RatMatrix I = RatMatrix::identity(dim);
    RatMatrix three_minus_inv = inverse(I * mpq_class(3) - Mq);
    RatMatrix M_minus_2I = Mq - I * mpq_class(2);
    A_ = M_minus_2I * three_minus_inv;
    // B_i = (3I-M)^{-1} + 2 (M-2I)(I + M + ... + M^{i-1})(3I-M)^{-1}
    RatMatrix geom(dim, dim);  // sum of M^j, j < i
    RatMatrix Mpow = I;
    for (int i = 0; i < 2 * d; ++i) {
      B_.push_back(three_minus_inv + M_minus_2I * geom * three_minus_inv * mpq_class(2));
      geom = geom + Mpow;
      Mpow = Mpow * Mq;
    }
    three_minus_inv_ = std::move(three_minus_inv);
  }

  int d() const { return d_; }
  const IntMatrix& M() const { return M_; }
  const RatMatrix& A() const { return A_; }
  const RatMatrix& B(int i) const { return B_.at(i); }
  const RatMatrix& three_minus_M_inverse() const { return three_minus_inv_; }

  const IntMatrix& M_power(int n) const {
    while (static_cast<int>(powers_.size()) <= n)
      powers_.push_back(powers_.empty() ? IntMatrix::identity(M_.rows())
                                        : powers_.back() * M_);
    return powers_[n];
  }

 private:
  int d_;
  IntMatrix M_;
  RatMatrix A_;
  RatMatrix three_minus_inv_;
  std::vector<RatMatrix> B_;
  mutable std::vector<IntMatrix> powers_;
};

/// Closed-form evaluation; throws if it disagrees with the recurrence.
inline ParikhVector f_closed_form(const ClosedFormKit& kit, int n) {
  const int d = kit.d();
  const int dim = 2 * d + 1;
  const int i = n % (2 * d);
  std::vector<mpq_class> v(dim, 0);
  const IntMatrix& Mn = kit.M_power(n);
  for (int r = 0; r < dim; ++r) {
    mpq_class acc = 0;
    for (int c = 0; c < dim; ++c) acc += kit.A()(r, c) * mpq_class(Mn(c, dim - 1));
    acc -= kit.B(i)(r, 0);
    v[r] = acc;
  }
  ParikhVector out(dim);
  for (int r = 0; r < dim; ++r) {
    if (v[r].get_den() != 1) throw std::runtime_error("closed form is not integral");
    out[r] = v[r].get_num();
  }
  if (out != f_vector(d, n))
    throw std::runtime_error("closed form disagrees with the recurrence");
  return out;
}

inline ParikhVector f_closed_form(int d, int n) { return f_closed_form(ClosedFormKit(d), n); }

enum class Family { Type0, TypeI, TypeII, NonPal };

inline std::string family_name(Family f, int k = 0) {
  switch (f) {
    case Family::Type0: return "type0";
    case Family::TypeI: return "typeI";
    case Family::TypeII: return "typeII";
    case Family::NonPal: return "nonpal(" + std::to_string(k) + ")";
  }
  return "?";
}

/// Exact recurrence state for one bispecial-factor series. For the
/// non-palindromic families, r and r_alt carry the two certified lower-bound
/// candidates for the shortest-return-word Parikh vector.
struct SeriesState {
  Family family;
  int k = 0;  // NonPal series index, 1..2d-1
  int d = 0;
  int n = 0;
  ParikhVector w;
  ParikhVector r;
  ParikhVector r_alt;  // second candidate (NonPal only)
};

inline SeriesState make_series(int d, Family family, int k = 0) {
  const int dim = 2 * d + 1;
  IntMatrix M = phi_incidence(d);
  SeriesState s;
  s.family = family;
  s.k = k;
  s.d = d;
  s.n = 0;
  switch (family) {
    case Family::Type0:
      s.w = f_vector(d, 0);
      s.r = s.w;
      break;
    case Family::TypeI:
      s.w = unit_vector(dim, dim - 1);
      s.r = s.w;
      break;
    case Family::TypeII:
      s.w = f_vector(d, 2 * d);
      s.r = M.pow(2 * d) * unit_vector(dim, 0);
      break;
    case Family::NonPal:
      if (k < 1 || k > 2 * d - 1) throw std::invalid_argument("nonpal series needs 1 <= k <= 2d-1");
      s.w = vec_add(f_vector(d, k), unit_vector(dim, dim - 1));
      s.r = M.pow(k) * unit_vector(dim, dim - 1);
      s.r_alt = M.pow(2 * d) * unit_vector(dim, 0);
      break;
  }
  return s;
}

inline SeriesState series_step(const SeriesState& s) {
  const int d = s.d;
  const int dim = 2 * d + 1;
  IntMatrix M = phi_incidence(d);
  SeriesState t = s;
  t.n = s.n + 1;
  if (s.family == Family::Type0) {  // the F_k chain itself
    t.w = M * s.w;
    t.w[0] += 1;
    if (t.n % (2 * d) == 0) t.w[dim - 1] += 2;
    t.r = t.w;
    return t;
  }
  t.w = M * s.w;
  t.w[0] += 1;
  int phase = t.n % (2 * d);
  if (s.family == Family::NonPal) {
    if (phase == 0 || phase == (2 * d - s.k) % (2 * d)) t.w[dim - 1] += 1;
  } else {
    if (phase == 0) t.w[dim - 1] += 2;
  }
  t.r = M * s.r;
  if (!s.r_alt.empty()) t.r_alt = M * s.r_alt;
  for (const mpz_class& x : t.w)
    if (x < 0) throw std::runtime_error("negative series entry");
  return t;
}

struct VerifyFailure {
  std::string what;
  Family family;
  int k = 0;
  int n = 0;
};

/// Explicit Parikh-vector identities for the two palindromic series:
/// w_n = f_n + M^n e_{2d}, r_n = M^n e_{2d} (first series);
/// w_n = f_{n+2d},         r_n = M^{n+2d} e_0 (second series);
/// plus the splice identity M^n f_{2d} + f_n = f_{n+2d}.
inline std::optional<VerifyFailure> verify_explicit_bs_report(int d, int N,
                                                              bool perturb = false) {
  const int dim = 2 * d + 1;
  ClosedFormKit kit(d);
  SeriesState s1 = make_series(d, Family::TypeI);
  SeriesState s2 = make_series(d, Family::TypeII);
  if (perturb) s1.w[0] += 1;
  std::vector<ParikhVector> f(N + 2 * d + 1);
  f[0] = ParikhVector(dim, 0);
  for (int n = 1; n <= N + 2 * d; ++n) {
    f[n] = kit.M() * f[n - 1];
    f[n][0] += 1;
    if (n % (2 * d) == 0) f[n][dim - 1] += 2;
  }
  for (int n = 0; n <= N; ++n) {
    const IntMatrix& Mhigh = kit.M_power(n + 2 * d);  // fill the power cache
    const IntMatrix& Mn = kit.M_power(n);             // before taking references
    ParikhVector e2d = unit_vector(dim, dim - 1);
    ParikhVector e0 = unit_vector(dim, 0);
    ParikhVector Mn_e2d = Mn * e2d;
    if (s1.w != vec_add(f[n], Mn_e2d))
      return VerifyFailure{"first-series w identity", Family::TypeI, 0, n};
    if (s1.r != Mn_e2d) return VerifyFailure{"first-series r identity", Family::TypeI, 0, n};
    if (s2.w != f[n + 2 * d])
      return VerifyFailure{"second-series w identity", Family::TypeII, 0, n};
    if (s2.r != Mhigh * e0)
      return VerifyFailure{"second-series r identity", Family::TypeII, 0, n};
    if (vec_add(Mn * f[2 * d], f[n]) != f[n + 2 * d])
      return VerifyFailure{"splice identity", Family::TypeII, 0, n};
    s1 = series_step(s1);
    s2 = series_step(s2);
  }
  return std::nullopt;
}

inline bool verify_explicit_bs(int d, int N, bool perturb = false) {
  return !verify_explicit_bs_report(d, N, perturb).has_value();
}

/// Componentwise dominance for the non-palindromic series: each tracked
/// return-word bound exceeds w_n + e_{2d} or w_n + (e_0 + ... + e_{2d-1}).
inline std::optional<VerifyFailure> verify_dominance_report(int d, int N,
                                                            bool perturb = false) {
  const int dim = 2 * d + 1;
  IntMatrix M = phi_incidence(d);
  ParikhVector e2d = unit_vector(dim, dim - 1);
  ParikhVector e0 = unit_vector(dim, 0);
  ParikhVector ones_low(dim, 1);
  ones_low[dim - 1] = 0;  // e_0 + e_1 + ... + e_{2d-1}
  for (int k = 1; k <= 2 * d - 1; ++k) {
    SeriesState s = make_series(d, Family::NonPal, k);
    if (perturb) s.w = vec_add(s.w, s.r);  // inflate w_0 so the base case breaks
    // base cases
    if (!vec_leq(vec_add(s.w, e2d), s.r))
      return VerifyFailure{"base case: w_0 + e_{2d} <= M^k e_{2d}", Family::NonPal, k, 0};
    if (!vec_leq(vec_add(M.pow(2 * d - 1) * e0, s.w), s.r_alt))
      return VerifyFailure{"base case: M^{2d-1} e_0 + w_0 <= M^{2d} e_0", Family::NonPal, k, 0};
    for (int n = 0; n <= N; ++n) {
      bool a_ok = vec_leq(vec_add(s.w, e2d), s.r) || vec_leq(vec_add(s.w, ones_low), s.r);
      bool b_ok = vec_leq(vec_add(s.w, e2d), s.r_alt) || vec_leq(vec_add(s.w, ones_low), s.r_alt);
      if (!a_ok) return VerifyFailure{"dominance, first bound", Family::NonPal, k, n};
      if (!b_ok) return VerifyFailure{"dominance, second bound", Family::NonPal, k, n};
      s = series_step(s);
    }
  }
  return std::nullopt;
}

inline bool verify_dominance(int d, int N, bool perturb = false) {
  return !verify_dominance_report(d, N, perturb).has_value();
}

enum class CheckStatus { Pass, Fail, Undecided };

struct FamilySweep {
  std::string family;
  CheckStatus status = CheckStatus::Pass;
  int first_failure_n = -1;
  mpq_class min_margin;  // certified lower bound of hr - (3 - Lambda) hw
  bool margin_valid = false;
};

struct WeightInequalityReport {
  int d = 0;
  int N = 0;
  CheckStatus status = CheckStatus::Pass;
  std::vector<FamilySweep> families;
};

namespace detail {

/// Certified comparison (3 - Lambda) hw <= hr with adaptive refinement.
/// Returns pass/fail/undecided and a margin lower bound when passing.
inline CheckStatus certify_weight_step(AlgebraicNumber& lambda, const mpz_class& hw,
                                       const mpz_class& hr, mpq_class& margin_out) {
  while (true) {
    mpq_class upper = (mpq_class(3) - lambda.lo()) * mpq_class(hw);  // sup of (3-L) hw
    mpq_class lower = (mpq_class(3) - lambda.hi()) * mpq_class(hw);  // inf of (3-L) hw
    if (upper < mpq_class(hr)) {
      margin_out = mpq_class(hr) - upper;
      return CheckStatus::Pass;
    }
    if (lower > mpq_class(hr)) return CheckStatus::Fail;
    if (lambda.width() <= min_refine_width()) return CheckStatus::Undecided;
    for (int i = 0; i < 64 && lambda.width() > min_refine_width(); ++i) lambda.bisect();
  }
}

}  // namespace detail

/// Sweeps h w_n <= h r_n / (3 - Lambda) over every bispecial family for
/// n <= N. The starting-chain and non-palindromic families may pass by plain
/// componentwise dominance w <= r instead of the interval route.
inline WeightInequalityReport verify_weight_inequality(int d, int N,
                                                       const AlgebraicNumber& lambda_in) {
  if (d < 3) throw std::invalid_argument("weight inequality sweep needs d >= 3");
  AlgebraicNumber lambda = lambda_in;
  const int dim = 2 * d + 1;
  auto h = weight_vector(d);
  IntMatrix M = phi_incidence(d);
  WeightInequalityReport rep;
  rep.d = d;
  rep.N = N;

  auto run_family = [&](Family fam, int k) {
    FamilySweep sweep;
    sweep.family = family_name(fam, k);
    SeriesState s = make_series(d, fam, k);
    int limit = (fam == Family::Type0) ? std::min(N, 2 * d - 1) : N;
    for (int n = 0; n <= limit; ++n) {
      bool ok = false;
      if (fam == Family::Type0) {
        // return words to F_n are the images of single letters under the n-th
        // power of the morphism: M^n e_j = f_n + e_{j+n} >= w_n, so w <= r
        ok = true;
        const IntMatrix& Mn = M.pow(n);
        for (int j = 0; j + n <= 2 * d && ok; ++j) {
          ParikhVector r = Mn * unit_vector(dim, j);
          ok = r == vec_add(s.w, unit_vector(dim, j + n)) && vec_leq(s.w, r);
        }
      } else if (fam == Family::NonPal) {
        // at least one tracked bound certifies the inequality
        for (const ParikhVector* r : {&s.r, &s.r_alt}) {
          if (vec_leq(s.w, *r)) {
            ok = true;
            break;
          }
          mpq_class margin;
          CheckStatus st = detail::certify_weight_step(lambda, dot(h, s.w), dot(h, *r), margin);
          if (st == CheckStatus::Pass) {
            ok = true;
            if (!sweep.margin_valid || margin < sweep.min_margin) {
              sweep.min_margin = margin;
              sweep.margin_valid = true;
            }
            break;
          }
          if (st == CheckStatus::Undecided) {
            sweep.status = CheckStatus::Undecided;
            sweep.first_failure_n = n;
            return sweep;
          }
        }
      } else {
        mpq_class margin;
        CheckStatus st = detail::certify_weight_step(lambda, dot(h, s.w), dot(h, s.r), margin);
        if (st == CheckStatus::Undecided) {
          sweep.status = CheckStatus::Undecided;
          sweep.first_failure_n = n;
          return sweep;
        }
        ok = st == CheckStatus::Pass;
        if (ok && (!sweep.margin_valid || margin < sweep.min_margin)) {
          sweep.min_margin = margin;
          sweep.margin_valid = true;
        }
      }
      if (!ok) {
        sweep.status = CheckStatus::Fail;
        sweep.first_failure_n = n;
        return sweep;
      }
      if (n < limit) s = series_step(s);
    }
    return sweep;
  };

  rep.families.push_back(run_family(Family::Type0, 0));
  rep.families.push_back(run_family(Family::TypeI, 0));
  rep.families.push_back(run_family(Family::TypeII, 0));
  for (int k = 1; k <= 2 * d - 1; ++k) rep.families.push_back(run_family(Family::NonPal, k));
  for (const auto& fs : rep.families) {
    if (fs.status == CheckStatus::Fail) rep.status = CheckStatus::Fail;
    if (fs.status == CheckStatus::Undecided && rep.status == CheckStatus::Pass)
      rep.status = CheckStatus::Undecided;
  }
  return rep;
}

/// M^{2d} (M - 2I)^2 = I, exactly.
inline bool hamilton_cayley_check(int d) {
  const int dim = 2 * d + 1;
  IntMatrix M = phi_incidence(d);
  IntMatrix I = IntMatrix::identity(dim);
  IntMatrix M2 = M - I * mpz_class(2);
  return M.pow(2 * d) * M2 * M2 == I;
}

struct TypeIBoundReport {
  bool column_formula_ok = false;   // (3I-M)^{-1} e_0 closed form
  bool row_identity_ok = false;     // h (M - 2I) = (0,...,0,1,...,1)
  bool rhs_constant_ok = false;     // h (3I-M)^{-1} e_0 = 3^d/(3^d-1)
  bool lhs_bounded_ok = false;      // |lhs_n| <= 27/28 for n <= N
  bool rhs_bounded_ok = false;      // h B_i e_0 >= 3^d/(3^d-1) for all i
  int first_failure_n = -1;

  bool ok() const {
    return column_formula_ok && row_identity_ok && rhs_constant_ok && lhs_bounded_ok &&
           rhs_bounded_ok;
  }
};

/// Exact identities and the interval-certified bound on the oscillating side
/// of the first-series length inequality.
inline TypeIBoundReport typeI_bound_check(int d, int N, const AlgebraicNumber& lambda_in) {
  if (d < 3) throw std::invalid_argument("bound check needs d >= 3");
  AlgebraicNumber lambda = lambda_in;
  while (lambda.hi() >= 3) lambda.bisect();  // ratio below needs hi < 3
  const int dim = 2 * d + 1;
  ClosedFormKit kit(d);
  auto h = weight_vector(d);
  TypeIBoundReport rep;

  // (3I-M)^{-1} e_0 = 2/(3^{2d}-1) (3^{2d-1}, ..., 3, 1, 1)^T
  {
    mpz_class p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, 2 * d);
    mpq_class scale = mpq_class(2) / mpq_class(p3 - 1);
    bool ok = true;
    for (int r = 0; r < dim; ++r) {
      mpz_class entry;
      if (r < dim - 1)
        mpz_ui_pow_ui(entry.get_mpz_t(), 3, 2 * d - 1 - r);
      else
        entry = 1;
      if (kit.three_minus_M_inverse()(r, 0) != scale * mpq_class(entry)) ok = false;
    }
    rep.column_formula_ok = ok;
  }
  // h (M - 2I) = (0 x d, 1 x (d+1))
  {
    IntMatrix M = kit.M();
    bool ok = true;
    for (int j = 0; j < dim; ++j) {
      mpz_class acc = 0;
      for (int i = 0; i < dim; ++i) acc += h[i] * (M(i, j) - (i == j ? 2 : 0));
      if (acc != ((j >= d) ? 1 : 0)) ok = false;
    }
    rep.row_identity_ok = ok;
  }
  // h (3I-M)^{-1} e_0 = 3^d / (3^d - 1)
  mpz_class p3d;
  mpz_ui_pow_ui(p3d.get_mpz_t(), 3, d);
  mpq_class rhs_const = mpq_class(p3d) / mpq_class(p3d - 1);
  {
    mpq_class acc = 0;
    for (int i = 0; i < dim; ++i) acc += mpq_class(h[i]) * kit.three_minus_M_inverse()(i, 0);
    rep.rhs_constant_ok = acc == rhs_const;
  }
  // h B_i e_0 >= 3^d/(3^d-1), exactly, for every residue i
  {
    bool ok = true;
    for (int i = 0; i < 2 * d; ++i) {
      mpq_class acc = 0;
      for (int r = 0; r < dim; ++r) acc += mpq_class(h[r]) * kit.B(i)(r, 0);
      if (acc < rhs_const) ok = false;
    }
    rep.rhs_bounded_ok = ok;
  }
  // |h A M^n e_{2d} - (Lambda-2)/(3-Lambda) h M^n e_{2d}| <= 27/28 for n <= N
  {
    mpq_class bound(27, 28);
    bool ok = true;
    for (int n = 0; n <= N && ok; ++n) {
      const IntMatrix& Mn = kit.M_power(n);
      mpq_class hA = 0;
      mpz_class hM = 0;
      for (int c = 0; c < dim; ++c) {
        mpq_class col = 0;
        for (int r = 0; r < dim; ++r) col += mpq_class(h[r]) * kit.A()(r, c);
        hA += col * mpq_class(Mn(c, dim - 1));
      }
      for (int r = 0; r < dim; ++r) hM += h[r] * Mn(r, dim - 1);
      while (true) {
        mpq_class ratio_lo = (lambda.lo() - 2) / (3 - lambda.lo());
        mpq_class ratio_hi = (lambda.hi() - 2) / (3 - lambda.hi());
        mpq_class lhs_lo = hA - ratio_hi * mpq_class(hM);
        mpq_class lhs_hi = hA - ratio_lo * mpq_class(hM);
        mpq_class alo = abs(lhs_lo), ahi = abs(lhs_hi);
        mpq_class mag = std::max(alo, ahi);
        if (mag <= bound) break;
        // definite violation only once the whole interval clears the band
        if (lhs_lo > bound || lhs_hi < -bound || lambda.width() <= min_refine_width()) {
          ok = false;
          rep.first_failure_n = n;
          break;
        }
        for (int i = 0; i < 64 && lambda.width() > min_refine_width(); ++i) lambda.bisect();
      }
    }
    rep.lhs_bounded_ok = ok;
  }
  return rep;
}

}  // namespace palrich

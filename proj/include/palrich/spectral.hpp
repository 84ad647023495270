#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "palrich/algebraic.hpp"
#include "palrich/matrix.hpp"
#include "palrich/polynomial.hpp"
#include "palrich/recurrence.hpp"

namespace palrich {

/// Characteristic polynomial by the Faddeev–LeVerrier scheme (fraction-free
/// in spirit: all divisions are exact). Ascending coefficients, monic.
inline PolyZ char_poly(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("char_poly needs a square matrix");
  const int n = M.rows();
  RatMatrix Mq = to_rational(M);
  RatMatrix I = RatMatrix::identity(n);
  std::vector<mpq_class> c(n + 1);
  c[n] = 1;
  RatMatrix Mk(n, n);  // zero
  for (int k = 1; k <= n; ++k) {
    Mk = Mq * Mk + Mq * c[n - k + 1];
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += Mk(i, i);
    c[n - k] = -tr / k;
  }
  PolyZ p(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (c[i].get_den() != 1) throw std::runtime_error("characteristic polynomial not integral");
    p[i] = c[i].get_num();
  }
  return p;
}

namespace detail {

using Cplx = std::complex<long double>;

inline Cplx poly_eval_c(const std::vector<Cplx>& p, Cplx x) {
  Cplx acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline std::vector<Cplx> to_complex(const PolyZ& p) {
  std::vector<Cplx> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = Cplx(p[i].get_d(), 0.0L);
  return c;
}

/// All roots of a monic integer polynomial by Durand–Kerner iteration, with a
/// Weierstrass radius per root: each disk |z - z_i| <= radius_i contains a
/// true root, and if the disks are pairwise disjoint the map is a bijection.
struct RootCloud {
  std::vector<Cplx> roots;
  std::vector<long double> radii;
  bool disks_disjoint = false;
};

inline RootCloud find_roots(const PolyZ& poly) {
  if (poly.size() < 2 || poly.back() != 1)
    throw std::invalid_argument("root finder expects a monic nonconstant polynomial");
  const int n = poly_degree(poly);
  std::vector<Cplx> p = to_complex(poly);
  std::vector<Cplx> z(n);
  Cplx seed(0.4L, 0.9L);
  z[0] = seed;
  for (int i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
  for (int it = 0; it < 500; ++it) {
    long double delta = 0;
    for (int i = 0; i < n; ++i) {
      Cplx denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      Cplx step = poly_eval_c(p, z[i]) / denom;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-30L) break;
  }
  RootCloud rc;
  rc.roots = z;
  rc.radii.resize(n);
  for (int i = 0; i < n; ++i) {
    Cplx denom = 1;
    for (int j = 0; j < n; ++j)
      if (j != i) denom *= z[i] - z[j];
    rc.radii[i] = n * std::abs(poly_eval_c(p, z[i]) / denom);
  }
  rc.disks_disjoint = true;
  for (int i = 0; i < n && rc.disks_disjoint; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= rc.radii[i] + rc.radii[j]) {
        rc.disks_disjoint = false;
        break;
      }
  return rc;
}

/// True when every root outside the given real window lies strictly inside
/// the unit circle, certified by the Weierstrass disks.
inline bool conjugates_inside_unit_disk(const PolyZ& poly, long double window_lo,
                                        long double window_hi) {
  RootCloud rc = find_roots(poly);
  if (!rc.disks_disjoint) return false;
  for (std::size_t i = 0; i < rc.roots.size(); ++i) {
    const Cplx& z = rc.roots[i];
    bool in_window = std::abs(z.imag()) <= rc.radii[i] && z.real() + rc.radii[i] > window_lo &&
                     z.real() - rc.radii[i] < window_hi;
    if (in_window) continue;
    if (std::abs(z) + rc.radii[i] >= 1.0L) return false;
  }
  return true;
}

}  // namespace detail

struct PisotRoots {
  AlgebraicNumber lambda;                // dominant root of f, in (2,3)
  std::optional<AlgebraicNumber> beta;   // dominant root of g, in (1,2); absent for d = 1
  bool conjugates_certified = false;
};

/// Isolates the two eigenvalues of M outside the unit circle and certifies
/// that every conjugate stays strictly inside it.
inline PisotRoots pisot_roots(int d, const mpq_class& width) {
  if (d < 1) throw std::invalid_argument("pisot_roots needs d >= 1");
  PolyZ f = poly_f(d);
  PolyZ g = poly_g(d);
  AlgebraicNumber lambda(f, 2, 3);
  lambda.refine_to(width);
  PisotRoots out{std::move(lambda), std::nullopt, false};
  bool f_ok = detail::conjugates_inside_unit_disk(f, 2.0L, 3.0L);
  bool g_ok = true;
  if (d >= 2) {
    AlgebraicNumber beta(g, 1, 2);
    beta.refine_to(width);
    out.beta = std::move(beta);
    g_ok = detail::conjugates_inside_unit_disk(g, 1.0L, 2.0L);
  }
  out.conjugates_certified = f_ok && g_ok;
  return out;
}

/// 1 + 1/(3 - Lambda_D) where Lambda_D is the unique root of
/// t^{D-1}(t-2)^2 - 1 in (2,3). For odd D the same root is cross-checked as
/// the root of the trinomial factor of the characteristic polynomial.
inline Interval asymptotic_ce(int D, const mpq_class& width) {
  if (D < 3) throw std::invalid_argument("asymptotic_ce needs D >= 3");
  PolyZ p = poly_asymptotic(D);
  AlgebraicNumber lam(p, 2, 3);
  while (lam.hi() >= 3) lam.bisect();  // root is strictly below 3
  auto estar = [](const AlgebraicNumber& a) {
    return Interval{1 + 1 / (3 - a.lo()), 1 + 1 / (3 - a.hi())};
  };
  Interval e = estar(lam);
  while (e.width() > width) {
    if (lam.width() <= min_refine_width())
      throw std::runtime_error("refinement floor reached before requested width");
    lam.bisect();
    e = estar(lam);
  }
  if (D % 2 == 1) {
    int d = (D - 1) / 2;
    PolyZ f = poly_f(d);
    PolyZ lhs = poly_asymptotic(D);
    PolyZ tm1 = {-1, 1};
    if (poly_mul(poly_mul(tm1, f), poly_g(d)) != lhs)
      throw std::runtime_error("factorization cross-check failed");
    // the trinomial must change sign across the same isolating interval
    mpq_class flo = poly_eval(f, lam.lo()), fhi = poly_eval(f, lam.hi());
    if (!(flo < 0 && fhi > 0)) throw std::runtime_error("trinomial root cross-check failed");
  }
  return e;
}

namespace detail {

/// Right eigenvector entries as polynomials in the eigenvalue:
/// v_i = t^{2d-1-i}(t-2) for i < 2d, v_{2d} = 1.
inline std::vector<PolyQ> v_entries(int d) {
  std::vector<PolyQ> v;
  for (int i = 0; i < 2 * d; ++i) {
    PolyQ e(2 * d + 1 - i, 0);
    e[2 * d - 1 - i] = -2;
    e[2 * d - i] = 1;
    v.push_back(std::move(e));
  }
  v.push_back(PolyQ{1});
  return v;
}

/// Left eigenvector entries cleared of the (t-1) denominator:
/// u'_i = t^{i+1} - 2t^i + 1 (so u'_0 = t - 1, u'_1 = (t-1)^2, ...).
inline std::vector<PolyQ> u_cleared_entries(int d) {
  std::vector<PolyQ> u;
  for (int i = 0; i <= 2 * d; ++i) {
    PolyQ e(i + 2, 0);
    e[0] = 1;
    e[i] += -2;
    e[i + 1] += 1;
    u.push_back(std::move(e));
  }
  return u;
}

}  // namespace detail

struct EigenvectorFailure {
  std::string ring;   // "dominant-factor" or "cofactor"
  std::string side;   // "right", "left", "last-entry"
  int component = -1;
};

/// Symbolic eigenvector relations M v = t v and u M = t u in the quotient
/// rings modulo each irreducible factor of the characteristic polynomial,
/// plus the last-entry reductions of the left eigenvector.
inline std::optional<EigenvectorFailure> eigenvector_check_report(int d) {
  if (d < 1) throw std::invalid_argument("eigenvector_check needs d >= 1");
  const int dim = 2 * d + 1;
  auto v = detail::v_entries(d);
  auto u = detail::u_cleared_entries(d);
  struct RingCase {
    QuotientRing ring;
    std::string name;
  };
  std::vector<RingCase> rings;
  rings.push_back({QuotientRing(poly_f(d)), "dominant-factor"});
  if (d >= 2) rings.push_back({QuotientRing(poly_g(d)), "cofactor"});
  for (auto& rc : rings) {
    const QuotientRing& R = rc.ring;
    PolyQ t = {0, 1};
    // right: (Mv)_0 = sum v_j; (Mv)_i = v_{i-1} (+ 2 v_{2d} at the corner)
    PolyQ total;
    for (const auto& e : v) total = R.add(total, e);
    if (!R.equal(total, poly_mul(t, v[0])))
      return EigenvectorFailure{rc.name, "right", 0};
    for (int i = 1; i < dim; ++i) {
      PolyQ lhs = v[i - 1];
      if (i == dim - 1) lhs = R.add(lhs, poly_mul(PolyQ{2}, v[dim - 1]));
      if (!R.equal(lhs, poly_mul(t, v[i])))
        return EigenvectorFailure{rc.name, "right", i};
    }
    // left (cleared by t-1): (uM)_j = u_0 + u_{j+1} for j < 2d,
    // (uM)_{2d} = u_0 + 2 u_{2d}
    for (int j = 0; j < dim - 1; ++j)
      if (!R.equal(R.add(u[0], u[j + 1]), poly_mul(t, u[j])))
        return EigenvectorFailure{rc.name, "left", j};
    {
      PolyQ lhs = R.add(u[0], poly_mul(PolyQ{2}, u[dim - 1]));
      if (!R.equal(lhs, poly_mul(t, u[dim - 1])))
        return EigenvectorFailure{rc.name, "left", dim - 1};
    }
    // last entry: u'_{2d} reduces to (t-1) t^d in the dominant ring
    // and to 1 - t^d in the cofactor ring
    PolyQ expect;
    if (rc.name == "dominant-factor") {
      expect = PolyQ(d + 2, 0);
      expect[d] = -1;
      expect[d + 1] = 1;
    } else {
      expect = PolyQ(d + 1, 0);
      expect[0] = 1;
      expect[d] = -1;
    }
    if (!R.equal(u[dim - 1], expect))
      return EigenvectorFailure{rc.name, "last-entry", dim - 1};
  }
  return std::nullopt;
}

inline bool eigenvector_check(int d) { return !eigenvector_check_report(d).has_value(); }

/// u . v = 2 t^{d-1}/(t-1) (d(t-2) + t), verified in cleared form
/// sum_i u'_i v_i = 2 t^{d-1} (d(t-2) + t) in the ring modulo the trinomial.
inline bool udotv_check(int d) {
  if (d < 1) throw std::invalid_argument("udotv_check needs d >= 1");
  QuotientRing R(poly_f(d));
  auto v = detail::v_entries(d);
  auto u = detail::u_cleared_entries(d);
  PolyQ lhs;
  for (std::size_t i = 0; i < v.size(); ++i) lhs = R.add(lhs, R.mul(u[i], v[i]));
  // 2 t^{d-1} ((d+1) t - 2d)
  PolyQ rhs(d + 1, 0);
  rhs[d - 1] = mpq_class(-4 * d);
  rhs[d] = mpq_class(2 * (d + 1));
  return R.equal(lhs, rhs);
}

/// Weight-vector orthogonality: h . v vanishes in the cofactor ring, and
/// (t-1) h . v = 2 t^d in the dominant ring; also the cleared last left
/// entry equals (t-1) t^d there. Accepts a caller-supplied h so negative
/// controls can perturb it.
inline bool h_orthogonality(int d, std::optional<std::vector<mpz_class>> h_in = std::nullopt) {
  if (d < 2) throw std::invalid_argument("h_orthogonality needs d >= 2");
  auto h = h_in ? *h_in : weight_vector(d);
  auto v = detail::v_entries(d);
  PolyQ hv;
  for (std::size_t i = 0; i < v.size(); ++i)
    hv = poly_add(hv, poly_mul(PolyQ{mpq_class(h[i])}, v[i]));
  QuotientRing Rg(poly_g(d));
  if (!Rg.is_zero(hv)) return false;
  QuotientRing Rf(poly_f(d));
  PolyQ tm1 = {-1, 1};
  PolyQ rhs(d + 1, 0);
  rhs[d] = 2;
  if (!Rf.equal(poly_mul(tm1, hv), rhs)) return false;
  auto u = detail::u_cleared_entries(d);
  PolyQ last(d + 2, 0);
  last[d] = -1;
  last[d + 1] = 1;  // (t-1) t^d
  return Rf.equal(u[2 * d], last);
}

struct RecurrenceSolutionReport {
  bool ok = false;
  int worst_n = -1;
  double worst_relative_error = 0.0;
};

/// h M^n e_{2d} = sum over trinomial roots of c_lambda lambda^n with
/// c_lambda = lambda^{d+1} / ((d+1) lambda - 2d): exact integer left side
/// against a high-precision numeric right side.
inline RecurrenceSolutionReport recurrence_solution_check(int d, int N, double tol = 1e-6) {
  if (d < 1) throw std::invalid_argument("recurrence solution check needs d >= 1");
  const int dim = 2 * d + 1;
  detail::RootCloud rc = detail::find_roots(poly_f(d));
  if (!rc.disks_disjoint) throw std::runtime_error("root disks overlap; spectrum uncertain");
  std::vector<detail::Cplx> c(rc.roots.size());
  for (std::size_t i = 0; i < rc.roots.size(); ++i) {
    detail::Cplx l = rc.roots[i];
    c[i] = std::pow(l, d + 1) / (detail::Cplx(d + 1) * l - detail::Cplx(2 * d));
  }
  IntMatrix M = phi_incidence(d);
  auto h = weight_vector(d);
  ParikhVector col = unit_vector(dim, dim - 1);
  RecurrenceSolutionReport rep;
  rep.ok = true;
  for (int n = 0; n <= N; ++n) {
    mpz_class lhs = dot(h, col);
    detail::Cplx rhs = 0;
    for (std::size_t i = 0; i < rc.roots.size(); ++i)
      rhs += c[i] * std::pow(rc.roots[i], n);
    long double lhsd = mpq_class(lhs).get_d();
    long double rel = std::abs(rhs - detail::Cplx(lhsd)) / std::max(1.0L, std::abs(lhsd));
    if (rel > rep.worst_relative_error) {
      rep.worst_relative_error = static_cast<double>(rel);
      rep.worst_n = n;
    }
    if (rel > tol) rep.ok = false;
    col = M * col;
  }
  return rep;
}

namespace detail {

/// Null vector of a (numerically singular) complex matrix, by Gaussian
/// elimination with partial pivoting; the weakest pivot column is freed.
inline std::vector<Cplx> null_vector(std::vector<std::vector<Cplx>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> pivot_col(n, -1);
  int row = 0;
  std::vector<bool> used(n, false);
  for (int col = 0; col < n && row < n; ++col) {
    int best = -1;
    long double best_mag = 0;
    for (int r = row; r < n; ++r)
      if (std::abs(a[r][col]) > best_mag) {
        best_mag = std::abs(a[r][col]);
        best = r;
      }
    if (best < 0 || best_mag < 1e-12L) continue;  // free column
    std::swap(a[row], a[best]);
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      Cplx factor = a[r][col] / a[row][col];
      for (int c2 = col; c2 < n; ++c2) a[r][c2] -= factor * a[row][c2];
    }
    pivot_col[row] = col;
    used[col] = true;
    ++row;
  }
  int free_col = -1;
  for (int c2 = n - 1; c2 >= 0; --c2)
    if (!used[c2]) {
      free_col = c2;
      break;
    }
  if (free_col < 0) throw std::runtime_error("matrix numerically nonsingular; no null vector");
  std::vector<Cplx> x(n, 0);
  x[free_col] = 1;
  for (int r = row - 1; r >= 0; --r) {
    Cplx s = -a[r][free_col];
    x[pivot_col[r]] = s / a[r][pivot_col[r]];
  }
  return x;
}

}  // namespace detail

/// Numeric rank-one spectral decomposition h M^n g = sum a_lambda lambda^n,
/// with a_lambda = (h . v_lambda)(u_lambda . g)/(u_lambda . v_lambda) from
/// high-precision eigenpairs, checked against the exact integer sequence.
inline bool spectral_decompose(const IntMatrix& M, const std::vector<mpz_class>& h,
                               const ParikhVector& gvec, int N, double tol = 1e-6) {
  const int n = M.rows();
  if (M.cols() != n || static_cast<int>(h.size()) != n || static_cast<int>(gvec.size()) != n)
    throw std::invalid_argument("dimension mismatch");
  PolyZ chi = char_poly(M);
  detail::RootCloud rc = detail::find_roots(chi);
  for (std::size_t i = 0; i < rc.roots.size(); ++i)
    for (std::size_t j = i + 1; j < rc.roots.size(); ++j)
      if (std::abs(rc.roots[i] - rc.roots[j]) < 1e-8L)
        throw std::runtime_error("near-degenerate spectrum");
  std::vector<detail::Cplx> a(rc.roots.size());
  for (std::size_t i = 0; i < rc.roots.size(); ++i) {
    detail::Cplx lam = rc.roots[i];
    std::vector<std::vector<detail::Cplx>> A(n, std::vector<detail::Cplx>(n));
    std::vector<std::vector<detail::Cplx>> At(n, std::vector<detail::Cplx>(n));
    for (int r = 0; r < n; ++r)
      for (int c2 = 0; c2 < n; ++c2) {
        detail::Cplx e = detail::Cplx(M(r, c2).get_d()) - (r == c2 ? lam : detail::Cplx(0));
        A[r][c2] = e;
        At[c2][r] = e;
      }
    std::vector<detail::Cplx> v = detail::null_vector(A);
    std::vector<detail::Cplx> u = detail::null_vector(At);
    detail::Cplx hv = 0, ug = 0, uv = 0;
    for (int r = 0; r < n; ++r) {
      hv += detail::Cplx(h[r].get_d()) * v[r];
      ug += u[r] * detail::Cplx(mpq_class(gvec[r]).get_d());
      uv += u[r] * v[r];
    }
    if (std::abs(uv) < 1e-12L) throw std::runtime_error("eigenvector pairing degenerate");
    a[i] = hv * ug / uv;
  }
  ParikhVector col = gvec;
  for (int m = 0; m <= N; ++m) {
    mpz_class lhs = 0;
    for (int r = 0; r < n; ++r) lhs += h[r] * col[r];
    detail::Cplx rhs = 0;
    for (std::size_t i = 0; i < rc.roots.size(); ++i)
      rhs += a[i] * std::pow(rc.roots[i], m);
    long double lhsd = mpq_class(lhs).get_d();
    if (std::abs(rhs - detail::Cplx(lhsd)) > tol * std::max(1.0L, std::abs(lhsd))) return false;
    col = M * col;
  }
  return true;
}

}  // namespace palrich

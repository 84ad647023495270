// Command-line front end: sequence generation, verification sweeps, and the
// repetition-threshold table.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "palrich/eertree.hpp"
#include "palrich/io.hpp"
#include "palrich/morphism.hpp"
#include "palrich/recurrence.hpp"
#include "palrich/spectral.hpp"

using nlohmann::json;
using namespace palrich;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 3;

std::string decimal(const mpq_class& q, int digits) {
  mpf_class f(q, static_cast<int>(digits * 3.33) + 64);
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << f;
  return out.str();
}

/// Writes to `path`, or stdout when path is empty; file writes go through a
/// temporary so a failed run never leaves a half-written report.
void emit(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move report into place: " + path);
}

int cmd_gen(int D, bool use_pi, int d, long len, const std::string& out_path) {
  Morphism phi;
  Word prefix;
  json header;
  if (use_pi) {
    WeightedMorphism pi = make_weighted_pi(d);
    phi = make_phi(2 * d + 1);
    Word base = fixed_point_prefix(phi, len);  // images are nonempty
    Word image = apply(pi.base, base);
    prefix = image.substr(0, std::min<std::size_t>(len, image.size()));
    header["alphabet_size"] = pi.base.target_alphabet_size;
    header["morphism"] = to_json(pi.base);
  } else {
    phi = make_phi(D);
    prefix = fixed_point_prefix(phi, len);
    header["alphabet_size"] = D;
    header["morphism"] = to_json(phi);
  }
  header["length"] = prefix.size();
  std::ostringstream body;
  body << header.dump() << "\n";
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) body << ' ';
    body << prefix.letters[i];
  }
  if (prefix.size()) body << "\n";
  emit(out_path, body.str());
  return kExitPass;
}

struct CheckRow {
  std::string id;
  std::string status;
  json detail = json::object();
};

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Undecided: return "undecided";
  }
  return "?";
}

int cmd_verify(int d, int N, long prefix_len, double tol, bool perturb,
               const std::string& out_path) {
  std::vector<CheckRow> rows;
  bool any_fail = false, any_undecided = false;
  auto add = [&](std::string id, bool ok, json detail = json::object()) {
    rows.push_back({std::move(id), ok ? "pass" : "fail", std::move(detail)});
    any_fail = any_fail || !ok;
  };

  const int D = 2 * d + 1;
  AlgebraicNumber lambda;
  {
    PisotRoots pr = pisot_roots(d, mpq_class(1, 1000000000));
    lambda = pr.lambda;
    json det{{"lambda", {lambda.lo().get_d(), lambda.hi().get_d()}}};
    if (pr.beta) det["beta"] = {pr.beta->lo().get_d(), pr.beta->hi().get_d()};
    add("pisot-roots-certified", pr.conjugates_certified, det);
  }
  add("char-poly-factorization", char_poly(phi_incidence(d)) == poly_mul(poly_f(d), poly_g(d)));
  add("cayley-hamilton-inverse-power", hamilton_cayley_check(d));
  {
    bool ok = true;
    ClosedFormKit kit(d);
    try {
      for (int n = 0; n <= std::min(N, 4 * d + 8); ++n) f_closed_form(kit, n);
    } catch (const std::exception&) {
      ok = false;
    }
    add("palindromic-prefix-closed-form", ok);
  }
  {
    auto fail = verify_explicit_bs_report(d, N, perturb);
    json det;
    if (fail) det = {{"series", family_name(fail->family, fail->k)}, {"n", fail->n},
                     {"reason", fail->what}};
    add("palindromic-series-identities", !fail, det);
  }
  {
    auto fail = verify_dominance_report(d, N, perturb);
    json det;
    if (fail) det = {{"series", family_name(fail->family, fail->k)}, {"n", fail->n},
                     {"reason", fail->what}};
    add("nonpalindromic-return-dominance", !fail, det);
  }
  {
    WeightInequalityReport rep = verify_weight_inequality(d, N, lambda);
    json fams = json::array();
    for (const auto& fs : rep.families) {
      json f{{"family", fs.family}, {"status", status_name(fs.status)}};
      if (fs.margin_valid) f["min_margin"] = fs.min_margin.get_d();
      if (fs.first_failure_n >= 0) f["first_failure_n"] = fs.first_failure_n;
      fams.push_back(f);
    }
    rows.push_back({"weighted-length-inequality", status_name(rep.status),
                    json{{"families", fams}}});
    any_fail = any_fail || rep.status == CheckStatus::Fail;
    any_undecided = any_undecided || rep.status == CheckStatus::Undecided;
  }
  {
    TypeIBoundReport tb = typeI_bound_check(d, N, lambda);
    add("oscillating-term-bounds", tb.ok(),
        json{{"column_formula", tb.column_formula_ok},
             {"row_identity", tb.row_identity_ok},
             {"rhs_constant", tb.rhs_constant_ok},
             {"lhs_bounded", tb.lhs_bounded_ok},
             {"rhs_bounded", tb.rhs_bounded_ok}});
  }
  add("eigenvector-relations", eigenvector_check(d));
  add("eigenvector-dot-product", udotv_check(d));
  add("weight-vector-orthogonality", h_orthogonality(d));
  {
    auto rr = recurrence_solution_check(d, std::min(N, 200), tol);
    add("weighted-length-recurrence-solution", rr.ok,
        json{{"worst_relative_error", rr.worst_relative_error}, {"worst_n", rr.worst_n}});
  }
  {
    const int dim = 2 * d + 1;
    add("spectral-decomposition",
        spectral_decompose(phi_incidence(d), weight_vector(d), unit_vector(dim, dim - 1),
                           std::min(N, 120), tol));
  }
  if (prefix_len > 0) {
    Word u = fixed_point_prefix(make_phi(D), prefix_len);
    if (perturb && u.size() > 2) u.letters[u.size() / 2] = 0;  // corrupt one letter
    RichnessReport rich = richness(u);
    json det{{"prefix_length", (long)u.size()}, {"defect", (long)rich.defect}};
    if (rich.first_defect_position) det["first_defect_position"] = *rich.first_defect_position;
    add("fixed-point-prefix-richness", rich.defect == 0, det);
  }

  json report;
  report["schema_version"] = 1;
  report["config"] = {{"d", d},       {"N", N},           {"prefix", prefix_len},
                      {"tol", tol},   {"perturb", perturb}};
  json checks = json::array();
  for (const auto& r : rows)
    checks.push_back(json{{"id", r.id}, {"status", r.status}, {"detail", r.detail}});
  report["checks"] = checks;
  report["status"] = any_fail ? "fail" : (any_undecided ? "undecided" : "pass");
  emit(out_path, report.dump(2) + "\n");
  return any_fail ? kExitFail : (any_undecided ? kExitUndecided : kExitPass);
}

int cmd_rt_table(std::vector<int> Ds, int digits, const std::string& out_path) {
  if (Ds.empty()) Ds = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  mpq_class width = mpq_class(1);
  for (int i = 0; i < digits + 2; ++i) width /= 10;
  std::ostringstream csv;
  csv << "D,lambda_lo,lambda_hi,estar_lo,estar_hi,digits\n";
  for (int D : Ds) {
    PolyZ p = poly_asymptotic(D);
    AlgebraicNumber lam(p, 2, 3);
    while (lam.hi() >= 3) lam.bisect();
    lam.refine_to(width);
    Interval e = asymptotic_ce(D, width);
    csv << D << ',' << decimal(lam.lo(), digits) << ',' << decimal(lam.hi(), digits) << ','
        << decimal(e.lo, digits) << ',' << decimal(e.hi, digits) << ',' << digits << "\n";
  }
  emit(out_path, csv.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for palindrome-rich morphic sequences"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a fixed-point (or weighted-image) prefix");
  int gen_D = 0, gen_d = 0;
  long gen_len = 1000;
  bool gen_pi = false;
  std::string gen_out;
  gen->add_flag("--pi", gen_pi, "apply the weighted morphism to the fixed point");
  gen->add_option("--D", gen_D, "alphabet size of the fixed point (odd, >= 3)");
  gen->add_option("--d", gen_d, "parameter d (alphabet 2d+1) when --pi is set");
  gen->add_option("--len", gen_len, "number of letters to emit")->check(CLI::NonNegativeNumber);
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the verification sweep for one d");
  int v_d = 0, v_N = 500;
  long v_prefix = 100000;
  double v_tol = 1e-6;
  bool v_perturb = false;
  std::string v_out;
  verify->add_option("--d", v_d, "parameter d (alphabet 2d+1)")->required();
  verify->add_option("--N", v_N, "sweep bound for series indices")->check(CLI::PositiveNumber);
  verify->add_option("--prefix", v_prefix, "prefix length for the richness check (0 skips)");
  verify->add_option("--tol", v_tol, "relative tolerance for numeric spectral checks");
  verify->add_flag("--perturb", v_perturb, "negative control: inject a known defect");
  verify->add_option("-o,--out", v_out, "report path (default stdout)");

  auto* table = app.add_subcommand("rt-table", "tabulate certified asymptotic exponents");
  std::vector<int> t_D;
  int t_digits = 10;
  std::string t_out;
  table->add_option("--D", t_D, "alphabet sizes (repeatable; default 3..12)");
  table->add_option("--digits", t_digits, "certified decimal digits")
      ->check(CLI::Range(1, 60));
  table->add_option("-o,--out", t_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (gen_pi) {
        if (gen_d < 2) throw CLI::ValidationError("--pi requires --d >= 2");
      } else if (gen_D < 3) {
        throw CLI::ValidationError("gen requires --D >= 3");
      }
      return cmd_gen(gen_D, gen_pi, gen_d, gen_len, gen_out);
    }
    if (verify->parsed()) {
      if (v_d < 3) throw CLI::ValidationError("verify requires d >= 3");
      return cmd_verify(v_d, v_N, v_prefix, v_tol, v_perturb, v_out);
    }
    if (table->parsed()) {
      for (int D : t_D)
        if (D < 3) throw CLI::ValidationError("rt-table requires D >= 3");
      return cmd_rt_table(t_D, t_digits, t_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    // precision exhaustion is reported apart from mathematical failure
    return std::string(e.what()).find("refinement floor") != std::string::npos ? kExitUndecided
                                                                               : kExitFail;
  }
  return kExitUsage;
}

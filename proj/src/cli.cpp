#include "charfock/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "charfock/colligation.hpp"
#include "charfock/equiv.hpp"
#include "charfock/error.hpp"
#include "charfock/io.hpp"
#include "charfock/lifting.hpp"
#include "charfock/mobius.hpp"
#include "charfock/proptest.hpp"
#include "charfock/rowcon.hpp"
#include "charfock/worked.hpp"

namespace charfock::cli {

namespace {

struct Common {
  std::string input;
  std::string output;
  std::string format = "text";
  int degree = 6;
  double tol = 1e-8;
  double rank_tol = kDefaultRankTol;
  std::uint64_t seed = 0;
};

// A report plus the exit code it implies.
struct Outcome {
  Outcome() = default;
  Outcome(Json r, int c, std::string t = {}) : report(std::move(r)), code(c), text(std::move(t)) {}

  Json report;
  int code = kOk;
  std::string text;  // preferred text rendering, if any
};

// ---- text rendering -------------------------------------------------------

std::string number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string complex_text(const Json& z) {
  const double re = z[0].get<double>();
  const double im = z[1].get<double>();
  if (im == 0.0) return number(re);
  if (re == 0.0) return number(im) + "i";
  return number(re) + (im < 0 ? "-" : "+") + number(std::abs(im)) + "i";
}

bool is_matrix(const Json& j) {
  return j.is_object() && j.size() == 3 && j.contains("rows") && j.contains("cols") && j.contains("data");
}

std::string matrix_text(const Json& m) {
  const auto rows = m["rows"].get<long long>();
  const auto cols = m["cols"].get<long long>();
  std::string s = "[";
  for (long long r = 0; r < rows; ++r) {
    if (r) s += "; ";
    for (long long c = 0; c < cols; ++c) {
      if (c) s += ", ";
      s += complex_text(m["data"][static_cast<size_t>(r * cols + c)]);
    }
  }
  return s + "]";
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return number(j.get<double>());
  return j.dump();
}

bool is_flat(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
}

void render(const Json& j, const std::string& indent, std::ostringstream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const Json& v = it.value();
    if (is_matrix(v)) {
      out << indent << key << ": " << matrix_text(v) << "\n";
    } else if (v.is_primitive()) {
      out << indent << key << ": " << scalar_text(v) << "\n";
    } else if (is_flat(v)) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar_text(x);
      out << indent << key << ": [" << s << "]\n";
    } else {
      out << indent << key << ":\n";
      render(v, indent + "  ", out);
    }
  }
}

// Series are printed one coefficient per line in text mode.
Json series_view(const NCSeries& s) {
  Json coeffs = Json::object();
  const std::vector<Word> words = enumerate_words(s.arity(), s.degree());
  for (size_t k = 0; k < words.size(); ++k) {
    coeffs["c" + words[k].to_string()] = matrix_to_json(s.coeff(static_cast<Index>(k)));
  }
  return coeffs;
}

void emit(const Outcome& o, const Common& c, std::ostream& out) {
  std::string text;
  if (c.format == "json") {
    text = o.report.dump(2) + "\n";
  } else if (!o.text.empty()) {
    text = o.text;
  } else {
    std::ostringstream buf;
    render(o.report, "", buf);
    text = buf.str();
  }
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + c.output);
  file << text;
}

// ---- inputs ---------------------------------------------------------------

Json load(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidInput, "--input is required");
  return read_json_file(path);
}

Json symbol_json(const NCSeries& s, const Common& c) {
  return c.format == "json" ? series_to_json(s) : series_view(s);
}

// Any document that determines a symbol: a series, a row contraction, a
// colligation or a lifting.
NCSeries symbol_of(const Json& j, const Common& c) {
  switch (classify(j)) {
    case DocumentKind::Series: return series_from_json(j);
    case DocumentKind::RowContraction: {
      const RowContraction t = rowcon_from_json(j);
      require_contraction(t);
      return char_symbol(t, c.degree, c.rank_tol);
    }
    case DocumentKind::Colligation: return transfer_symbol(colligation_from_json(j), c.degree);
    case DocumentKind::Lifting: {
      const Lifting e = lifting_from_json(j, c.rank_tol);
      require_contraction(e.assembled());
      return lifting_char_decomposed(e, c.degree, c.rank_tol);
    }
    case DocumentKind::Unknown: break;
  }
  throw Error(ErrorCode::InvalidInput, "document matches no known schema");
}

Colligation colligation_of(const Json& j, const Common& c) {
  switch (classify(j)) {
    case DocumentKind::Colligation: return colligation_from_json(j);
    case DocumentKind::RowContraction: {
      const RowContraction t = rowcon_from_json(j);
      require_contraction(t);
      return popescu_colligation(t, c.rank_tol);
    }
    case DocumentKind::Lifting: {
      const Lifting e = lifting_from_json(j, c.rank_tol);
      require_contraction(e.assembled());
      return lifting_colligation(e, c.rank_tol);
    }
    default: break;
  }
  throw Error(ErrorCode::InvalidInput, "expected a colligation, row contraction or lifting");
}

Lifting lifting_of(const Json& j, const Common& c) {
  if (classify(j) != DocumentKind::Lifting) throw Error(ErrorCode::InvalidInput, "expected a lifting");
  Lifting e = lifting_from_json(j, c.rank_tol);
  require_contraction(e.assembled());
  return e;
}

// ---- commands -------------------------------------------------------------

Outcome cmd_charfn(const Common& c, bool oracle) {
  const RowContraction t = rowcon_from_json(load(c.input));
  require_contraction(t);
  const bool cnc = is_cnc(t, c.rank_tol);
  const NCSeries s = oracle ? char_symbol_oracle(t, c.degree, c.rank_tol) : char_symbol(t, c.degree, c.rank_tol);
  Json r{{"command", "charfn"}, {"route", oracle ? "fock" : "closed-form"}, {"cnc", cnc}};
  if (!cnc) r["warning"] = "row contraction is not c.n.c.; the symbol does not determine it";
  r["symbol"] = symbol_json(s, c);
  return {r, kOk};
}

Outcome cmd_transfer(const Common& c, bool oracle) {
  const Colligation w = colligation_from_json(load(c.input));
  const NCSeries s = oracle ? transfer_oracle(w, c.degree) : transfer_symbol(w, c.degree);
  return {Json{{"command", "transfer"}, {"route", oracle ? "fock" : "closed-form"}, {"symbol", symbol_json(s, c)}},
          kOk};
}

Outcome cmd_lift_charfn(const Common& c, const std::string& method, bool ambient) {
  const Lifting e = lifting_of(load(c.input), c);
  const bool minimal = minimality_check(e, c.rank_tol);
  Json r{{"command", "lift-charfn"}, {"method", method}, {"minimal", minimal}};
  if (!minimal) r["warning"] = "lifting is not minimal; identities are not expected to hold";
  const GammaData g = extract_gamma(e, c.rank_tol);
  r["gamma"] = matrix_to_json(g.link);
  int code = kOk;
  if (ambient) {
    r["coordinates"] = "ambient";
    r["symbol"] = symbol_json(lifting_char_ambient(e, c.degree, false, c.rank_tol), c);
  } else if (method == "direct") {
    r["symbol"] = symbol_json(lifting_char_direct(e, c.degree, c.rank_tol), c);
  } else if (method == "decomposed") {
    r["symbol"] = symbol_json(lifting_char_decomposed(e, c.degree, c.rank_tol), c);
  } else {
    const NCSeries direct = lifting_char_direct(e, c.degree, c.rank_tol);
    const NCSeries decomposed = lifting_char_decomposed(e, c.degree, c.rank_tol);
    const double dev = max_coeff_deviation(direct, decomposed);
    r["deviation"] = dev;
    r["agree"] = dev <= c.tol;
    r["symbol"] = symbol_json(decomposed, c);
    if (minimal && dev > c.tol) code = kCheckFailed;
  }
  return {r, code};
}

Outcome cmd_check(const Common& c, const std::string& kind) {
  const Json doc = load(c.input);
  Json r{{"command", "check"}, {"kind", kind}};
  bool ok = false;
  if (kind == "cnc") {
    const RowContraction t = rowcon_from_json(doc);
    require_contraction(t);
    const OrthonormalBasis sub = cnc_subspace(t, c.rank_tol);
    ok = sub.empty();
    r["coisometric_part_dim"] = sub.size();
  } else if (kind == "coisom") {
    const ResidualCheck chk = is_coisometric(colligation_of(doc, c), c.tol);
    ok = chk.ok;
    r["residual"] = chk.residual;
  } else if (kind == "observable") {
    const OrthonormalBasis sub = unobservable_subspace(colligation_of(doc, c), c.rank_tol);
    ok = sub.empty();
    r["unobservable_dim"] = sub.size();
  } else if (kind == "minimal") {
    ok = minimality_check(lifting_of(doc, c), c.rank_tol);
  } else {
    const ResolvingReport rep = resolving_check(lifting_of(doc, c), c.rank_tol);
    ok = rep.resolving;
    r["link_kernel_dim"] = rep.link_kernel.size();
    r["defect_kernel_dim"] = rep.defect_kernel.size();
  }
  r["holds"] = ok;
  return {r, ok ? kOk : kCheckFailed};
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return kOk;
    case Verdict::RefutedByInvariant: return kCheckFailed;
    case Verdict::Unknown: return kUnknownVerdict;
  }
  return kUnknownVerdict;
}

Json verdict_json(const EquivalenceResult& res, const std::vector<std::string>& names) {
  Json r{{"verdict", to_string(res.status)}, {"residual", res.residual}, {"tol", res.tol},
         {"restarts_used", res.restarts_used}};
  if (!res.certificate.empty()) r["certificate"] = res.certificate;
  for (size_t k = 0; k < res.unitaries.size() && k < names.size(); ++k) {
    r[names[k]] = matrix_to_json(res.unitaries[k]);
  }
  return r;
}

Outcome cmd_coincide(const Common& c, const std::string& left, const std::string& right, int restarts) {
  const NCSeries s1 = symbol_of(load(left), c);
  const NCSeries s2 = symbol_of(load(right), c);
  SolverOptions opts;
  opts.seed = c.seed;
  opts.restarts = restarts;
  const EquivalenceResult res = coincidence_solve(s1, s2, opts);
  Json r{{"command", "coincide"}, {"seed", c.seed}};
  r.update(verdict_json(res, {"input_unitary", "output_unitary"}));
  return {r, verdict_code(res.status)};
}

Outcome cmd_equiv(const Common& c, const std::string& left, const std::string& right) {
  const NCSeries s1 = symbol_of(load(left), c);
  const NCSeries s2 = symbol_of(load(right), c);
  const EquivalenceResult res = equivalence_solve(s1, s2, c.tol);
  Json r{{"command", "equiv"}};
  r.update(verdict_json(res, {"input_unitary"}));
  return {r, verdict_code(res.status)};
}

Json points_json(const CfRelationReport& rep) {
  Json pts = Json::array();
  for (const auto& p : rep.points) {
    pts.push_back({{"lambda", complex_to_json(p.lambda)},
                   {"mu", complex_to_json(p.mu)},
                   {"residual", p.residual},
                   {"bound", p.bound},
                   {"ok", p.ok}});
  }
  return pts;
}

Outcome cmd_mobius(const Common& c, Complex a) {
  const Json doc = load(c.input);
  Json r{{"command", "mobius"}, {"a", complex_to_json(a)}, {"degree", c.degree}};
  if (classify(doc) == DocumentKind::RowContraction) {
    const RowContraction t = rowcon_from_json(doc);
    if (t.arity() != 1) throw Error(ErrorCode::ArityNotOne, "mobius needs a single contraction");
    require_contraction(t);
    const CfRelationReport rep = verify_cf_relation(t.block(0), a, default_samples(), c.degree, c.rank_tol);
    r["moved"] = matrix_to_json(mobius_contraction(t.block(0), a));
    r["points"] = points_json(rep);
    r["worst_excess"] = rep.worst_excess;
    r["holds"] = rep.ok;
    return {r, rep.ok ? kOk : kCheckFailed};
  }
  const Lifting e = lifting_of(doc, c);
  if (e.arity() != 1) throw Error(ErrorCode::ArityNotOne, "mobius needs arity 1");
  const LiftingCfReport rep = verify_lifting_cf(e, a, default_samples(), c.degree, c.rank_tol);
  r["minimal"] = rep.minimal;
  r["block_residual"] = rep.block_residual;
  r["involution_residual"] = rep.involution_residual;
  r["link_relation_residual"] = rep.link_relation_residual;
  r["conjugation_points"] = points_json(rep.conjugation);
  r["factored_points"] = points_json(rep.factored);
  Json displayed = Json::array();
  for (double x : rep.factored_as_displayed) displayed.push_back(x);
  r["factored_with_moved_defect_residuals"] = displayed;
  r["holds"] = rep.ok;
  return {r, rep.ok ? kOk : kCheckFailed};
}

// ---- worked examples ------------------------------------------------------

struct CheckList {
  Json items = Json::array();
  bool ok = true;

  // Informational checks are reported but do not affect the exit code.
  void add(const std::string& name, double deviation, double tol, bool gated = true) {
    const bool pass = deviation <= tol;
    items.push_back({{"name", name}, {"deviation", deviation}, {"pass", pass}, {"gated", gated}});
    if (gated && !pass) ok = false;
  }
};

double scalar_gap(const ComplexMatrix& m, Complex expected) {
  if (m.rows() != 1 || m.cols() != 1) return std::numeric_limits<double>::infinity();
  return std::abs(m(0, 0) - expected);
}

double matrix_gap(const ComplexMatrix& m, const ComplexMatrix& expected) {
  if (m.rows() != expected.rows() || m.cols() != expected.cols()) return std::numeric_limits<double>::infinity();
  return (m - expected).cwiseAbs().maxCoeff();
}

// Largest deviation of coefficient column `col` of an ambient 1 x 2 symbol from f_n.
double column_gap(const NCSeries& s, Index col, const std::function<double(int)>& f) {
  double worst = 0.0;
  for (int n = 0; n <= s.degree(); ++n) worst = std::max(worst, std::abs(s.coeff(n)(0, col) - f(n)));
  return worst;
}

Json blaschke_example(Complex alpha, const Common& c, CheckList& checks) {
  const Lifting e = blaschke_lifting(alpha);
  const double radius = std::sqrt(1.0 - std::norm(alpha));
  const GammaData g = extract_gamma(e, c.rank_tol);
  const std::string tag = std::abs(alpha.imag()) > 0 ? "alpha=0.5i" : "alpha=0.3";
  checks.add(tag + " coupling", scalar_gap(e.coupling()[0], 0.5 * std::sqrt(3.0) * radius), c.tol);
  checks.add(tag + " link", scalar_gap(g.link, 1.0), c.tol);
  checks.add(tag + " link defect", g.link_defect.size() ? g.link_defect.norm() : 0.0, c.tol);
  ComplexMatrix de(2, 2);
  const Complex off = -0.5 * std::sqrt(3.0) * radius * alpha;
  de << 0.75 * std::norm(alpha), off, std::conj(off), radius * radius;
  de /= std::sqrt(1.0 - 0.25 * std::norm(alpha));
  checks.add(tag + " D_E", matrix_gap(defects(e.assembled()).defect, de), c.tol);
  ComplexMatrix sigma_de(1, 2);
  sigma_de << -std::conj(alpha) * 0.5 * std::sqrt(3.0), radius;
  checks.add(tag + " sigma D_E", matrix_gap(sigma_map(e, c.rank_tol).block_map, sigma_de), c.tol);
  const int degree = 20;
  const EquivalenceResult eq =
      equivalence_solve(lifting_char_decomposed(e, degree, c.rank_tol), blaschke_series(alpha, degree));
  checks.add(tag + " equivalent to Blaschke factor", eq.status == Verdict::Confirmed ? eq.residual : 1.0, 1e-8);
  return {{"alpha", complex_to_json(alpha)},
          {"B", matrix_to_json(e.coupling()[0])},
          {"gamma", matrix_to_json(g.link)},
          {"equivalence", verdict_json(eq, {"input_unitary"})}};
}

Json nilpotent_example(const Common& c, CheckList& checks) {
  const Lifting e = nilpotent_extension_lifting();
  const GammaData g = extract_gamma(e, c.rank_tol);
  checks.add("5.2 gamma", scalar_gap(g.link, 1.0 / std::sqrt(3.0)), c.tol);
  ComplexMatrix de = ComplexMatrix::Zero(2, 2);
  de(0, 0) = 1.0 / std::sqrt(2.0);
  de(1, 1) = 1.0;
  checks.add("5.2 D_E", matrix_gap(defects(e.assembled()).defect, de), c.tol);
  const NCSeries theta = lifting_char_ambient(e, 4, false, c.rank_tol);
  checks.add("5.2 theta first entry", column_gap(theta, 0, [](int n) { return n == 0 ? std::sqrt(2.0 / 3.0) : 0.0; }),
             c.tol);
  checks.add("5.2 theta second entry",
             column_gap(theta, 1, [](int n) { return n == 1 ? 1.0 / std::sqrt(3.0) : 0.0; }), c.tol);
  return {{"gamma", matrix_to_json(g.link)}, {"theta", series_view(theta)}};
}

Json half_example(const Common& c, CheckList& checks) {
  const Lifting e = half_extension_lifting();
  const GammaData g = extract_gamma(e, c.rank_tol);
  checks.add("5.3 gamma", scalar_gap(g.link, 2.0 / 3.0), c.tol);
  checks.add("5.3 link defect", scalar_gap(g.link_defect, std::sqrt(5.0) / 3.0), c.tol);
  const double s5 = std::sqrt(5.0);
  const double k = 1.0 / (2.0 * std::sqrt(s5 * (s5 + 2.0)));
  ComplexMatrix de(2, 2);
  de << k * (s5 + 2.0), -k, -k, k * (s5 + 3.0);
  checks.add("5.3 D_E", matrix_gap(defects(e.assembled()).defect, de), c.tol);
  ComplexMatrix sigma_de(2, 2);
  sigma_de << s5 / (2.0 * std::sqrt(3.0)), 0.0, -1.0 / (2.0 * std::sqrt(3.0)), 0.5 * std::sqrt(3.0);
  checks.add("5.3 sigma D_E", matrix_gap(sigma_map(e, c.rank_tol).block_map, sigma_de), c.tol);

  const int degree = 12;
  const NCSeries theta = lifting_char_ambient(e, degree, true, c.rank_tol);
  const double r3 = std::sqrt(3.0);
  // (4 - 3z) / (4 sqrt3 (1 - z/2))
  const auto first = [&](int n) { return (4.0 * std::ldexp(1.0, -n) - (n ? 3.0 * std::ldexp(1.0, 1 - n) : 0.0)) / (4.0 * r3); };
  // 2 (z - 1/2) / (3 (1 - z/2)) as displayed
  const auto second = [](int n) { return 2.0 / 3.0 * ((n ? std::ldexp(1.0, 1 - n) : 0.0) - 0.5 * std::ldexp(1.0, -n)); };
  // the same with the factor D_A = sqrt3/2 that the derivation carries
  const auto corrected = [&](int n) { return 0.5 * r3 * second(n); };
  checks.add("5.3 theta D_E first entry", column_gap(theta, 0, first), c.tol);
  checks.add("5.3 theta D_E second entry (as displayed)", column_gap(theta, 1, second), c.tol, false);
  checks.add("5.3 theta D_E second entry (with D_A)", column_gap(theta, 1, corrected), c.tol);
  return {{"gamma", matrix_to_json(g.link)}, {"link_defect", matrix_to_json(g.link_defect)},
          {"theta_times_defect", series_view(theta)}};
}

Outcome cmd_examples(const Common& c, const std::string& which) {
  CheckList checks;
  Json r{{"command", "examples"}, {"which", which}, {"tol", c.tol}};
  const bool all = which == "all";
  if (all || which == "5.1") {
    r["5.1"] = Json::array({blaschke_example(0.3, c, checks), blaschke_example(Complex(0.0, 0.5), c, checks)});
  }
  if (all || which == "5.2") r["5.2"] = nilpotent_example(c, checks);
  if (all || which == "5.3") r["5.3"] = half_example(c, checks);
  r["checks"] = checks.items;
  r["holds"] = checks.ok;
  return {r, checks.ok ? kOk : kCheckFailed};
}

Outcome cmd_proptest(const Common& c, const std::string& suite, int cases) {
  const SuiteReport rep = run_suite(suite, cases, c.seed);
  return {report_to_json(rep), rep.ok() ? kOk : kCheckFailed, report_to_text(rep)};
}

int error_code(ErrorCode e) {
  switch (e) {
    case ErrorCode::InvalidInput:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NotSquare:
    case ErrorCode::NotContraction:
    case ErrorCode::NotHermitian:
    case ErrorCode::BadParameter:
    case ErrorCode::ArityNotOne:
    case ErrorCode::OutOfRange:
    case ErrorCode::TooLarge:
    case ErrorCode::GammaNotContractive:
      return kInvalidInput;
    default:
      return kCheckFailed;
  }
}

void add_common(CLI::App* sub, Common& c, bool with_input = true) {
  if (with_input) sub->add_option("-i,--input", c.input, "input JSON document");
  sub->add_option("-o,--output", c.output, "write the report here instead of stdout");
  sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("-N,--degree", c.degree, "truncation degree")->check(CLI::Range(0, 64));
  sub->add_option("--tol", c.tol, "check tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--rank-tol", c.rank_tol, "relative rank threshold")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "master seed (CHARFOCK_SEED overrides)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic functions of row contractions, colligations and liftings", "charfock"};
  app.require_subcommand(1);
  Common c;
  bool oracle = false;
  bool ambient = false;
  std::string method = "decomposed";
  std::string kind;
  std::string left, right;
  std::string which = "all";
  std::string suite = "all";
  int cases = 20;
  int restarts = 16;
  double a_re = 0.0, a_im = 0.0;

  auto* charfn = app.add_subcommand("charfn", "characteristic symbol of a row contraction");
  add_common(charfn, c);
  charfn->add_flag("--oracle", oracle, "evaluate through truncated Fock-space operators");

  auto* transfer = app.add_subcommand("transfer", "transfer symbol of a colligation");
  add_common(transfer, c);
  transfer->add_flag("--oracle", oracle, "evaluate through truncated Fock-space operators");

  auto* lift = app.add_subcommand("lift-charfn", "characteristic symbol of a lifting");
  add_common(lift, c);
  lift->add_option("--method", method)->check(CLI::IsMember({"direct", "decomposed", "both"}));
  lift->add_flag("--ambient", ambient, "report in ambient coordinates");

  auto* check = app.add_subcommand("check", "structural checks");
  add_common(check, c);
  check->add_option("kind", kind)->required()->check(
      CLI::IsMember({"cnc", "coisom", "observable", "minimal", "resolving"}));

  auto* coincide = app.add_subcommand("coincide", "search for unitaries making two symbols coincide");
  add_common(coincide, c, false);
  coincide->add_option("--left", left)->required();
  coincide->add_option("--right", right)->required();
  coincide->add_option("--restarts", restarts)->check(CLI::Range(0, 1000));

  auto* equiv = app.add_subcommand("equiv", "search for an input unitary relating two symbols");
  add_common(equiv, c, false);
  equiv->add_option("--left", left)->required();
  equiv->add_option("--right", right)->required();

  auto* mobius = app.add_subcommand("mobius", "Blaschke-factor transform relations (arity 1)");
  add_common(mobius, c);
  mobius->add_option("--a-re", a_re);
  mobius->add_option("--a-im", a_im);

  auto* examples = app.add_subcommand("examples", "reproduce the worked examples");
  add_common(examples, c, false);
  examples->add_option("--which", which)->check(CLI::IsMember({"5.1", "5.2", "5.3", "all"}));

  auto* proptest = app.add_subcommand("proptest", "seeded property suites");
  add_common(proptest, c, false);
  proptest->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  proptest->add_option("--cases", cases)->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }

  if (const char* env = std::getenv("CHARFOCK_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "CHARFOCK_SEED is not an unsigned integer\n";
      return kInvalidInput;
    }
  }
  const bool is_mobius = mobius->parsed();
  if (is_mobius && mobius->count("--degree") == 0) c.degree = 40;

  try {
    Outcome o;
    if (charfn->parsed()) o = cmd_charfn(c, oracle);
    else if (transfer->parsed()) o = cmd_transfer(c, oracle);
    else if (lift->parsed()) o = cmd_lift_charfn(c, method, ambient);
    else if (check->parsed()) o = cmd_check(c, kind);
    else if (coincide->parsed()) o = cmd_coincide(c, left, right, restarts);
    else if (equiv->parsed()) o = cmd_equiv(c, left, right);
    else if (is_mobius) o = cmd_mobius(c, Complex(a_re, a_im));
    else if (examples->parsed()) o = cmd_examples(c, which);
    else o = cmd_proptest(c, suite, cases);
    emit(o, c, out);
    return o.code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return error_code(e.code());
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  }
}

}  // namespace charfock::cli

#pragma once

// Command-line front end. run() parses argv-style arguments, executes one
// subcommand and writes either a JSON record (--json) or the same record in
// "key: value" form. Exit codes: 0 ok, 1 other failure, 2 bad input,
// 3 precision failure, 4 invariant violation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heights/bigfloat.hpp"
#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/factor_search.hpp"
#include "heights/keyfile.hpp"
#include "heights/measure.hpp"
#include "heights/metric.hpp"
#include "heights/polynomial.hpp"
#include "heights/quad_field.hpp"
#include "heights/roots.hpp"
#include "heights/surd.hpp"

namespace heights::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kBadInput = 2, kPrecision = 3, kInvariant = 4 };

inline constexpr int kDecimalDigits = 30;

inline json enclosure_json(const RealEnclosure& e) {
  return {{"lo", e.lo().to_decimal(kDecimalDigits, MPFR_RNDD)},
          {"hi", e.hi().to_decimal(kDecimalDigits, MPFR_RNDU)},
          {"precision_bits", e.precision_bits()}};
}

inline json record(const std::string& command) {
  return {{"schema", 1}, {"command", command}, {"inputs", json::object()}, {"exact", false}};
}

// ---------------------------------------------------------------------------
// surd-op expressions: [surd] operands joined by '*' or '/', each optionally
// raised to ^(r), e.g. "[2^3/2 * 3^-1]^(2) / [3]".

namespace detail {

class SurdExprParser {
 public:
  explicit SurdExprParser(std::string_view text) : text_(text) {}

  SurdCoset parse() {
    SurdCoset acc = operand();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) return acc;
      const char op = text_[pos_];
      if (op != '*' && op != '/') throw ParseError("expected '*' or '/'", pos_);
      ++pos_;
      const SurdCoset rhs = operand();
      acc = op == '*' ? acc * rhs : acc / rhs;
    }
  }

 private:
  SurdCoset operand() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '[') throw ParseError("expected '['", pos_);
    const std::size_t open = ++pos_;
    const std::size_t close = text_.find(']', open);
    if (close == std::string_view::npos) throw ParseError("missing ']'", open);
    SurdCoset x;
    try {
      x = parse_surd(text_.substr(open, close - open));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                       open + e.position());
    }
    pos_ = close + 1;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '(') throw ParseError("expected '(' after '^'", pos_);
      const std::size_t start = ++pos_;
      const std::size_t end = text_.find(')', start);
      if (end == std::string_view::npos) throw ParseError("missing ')'", start);
      Rational r;
      try {
        r = parse_rational(text_.substr(start, end - start));
      } catch (const ParseError&) {
        throw ParseError("bad exponent", start);
      }
      if (r == 0) throw ParseError("zero exponent", start);
      x = x.pow(r);
      pos_ = end + 1;
    }
    return x;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline json surd_summary(const SurdCoset& x) {
  const SurdHeightValue h = surd_weil_height(x);
  return {{"coset", to_string(x)},
          {"m_infinity", surd_m_infinity(x).get_str()},
          {"weil_height", to_string(h)},
          {"weil_height_enclosure", enclosure_json(h.float_view())},
          {"degree", surd_degree(x)},
          {"minimal_polynomial", print_polynomial(surd_minimal_polynomial(x))}};
}

inline json table_json(const FiniteAbelianGroup& g, const HeightTable& h) {
  json t = json::object();
  for (std::size_t a = 0; a < g.order(); ++a) t[g.label(a)] = to_string(h[a]);
  return t;
}

// Canonical representative of f under f(x) -> x^n f(1/x), f(x) -> f(-x)
// and f -> -f, all of which preserve M.
inline std::vector<long> symmetry_key(std::vector<long> c) {
  auto normalise = [](std::vector<long> v) {
    if (v.back() < 0) {
      for (auto& x : v) x = -x;
    }
    return v;
  };
  auto neg_arg = [](std::vector<long> v) {
    for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return v;
  };
  std::vector<long> r(c.rbegin(), c.rend());
  return std::min({normalise(c), normalise(neg_arg(c)), normalise(r), normalise(neg_arg(r))});
}

inline double double_measure(const IntPolynomial& f) {
  const auto z = heights::detail::aberth_double(f, heights::detail::initial_guesses(f));
  double m = std::abs(f.leading().get_d());
  for (const auto& r : z) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return std::numeric_limits<double>::infinity();
    m *= std::max(1.0, std::abs(r));
  }
  return m;
}

}  // namespace detail

// Scans polynomials of exact degree d with coefficients in [-c, c] and a
// nonzero constant term, one per symmetry class, for the smallest measure
// exceeding 1 + epsilon. Double-precision measures rank the candidates;
// the minimum is then certified.
struct ScanResult {
  std::optional<IntPolynomial> best;
  std::optional<RealEnclosure> measure;
  std::size_t scanned = 0;
  std::size_t classes = 0;
  std::size_t certified = 0;
};

inline ScanResult lehmer_scan(unsigned degree, long coef_bound, const mpq_class& tol,
                              const mpq_class& epsilon = mpq_class(1, 1000000)) {
  if (degree < 1 || degree > 16) throw DomainError("lehmer-scan degree must be in 1..16");
  if (coef_bound < 1 || coef_bound > 10) throw DomainError("lehmer-scan coef-bound must be in 1..10");
  const long width = 2 * coef_bound + 1;
  double total = std::pow(static_cast<double>(width), degree + 1);
  if (total > 5e7) throw DomainError("lehmer-scan search space too large");

  ScanResult out;
  std::set<std::vector<long>> seen;
  std::vector<std::pair<double, std::vector<long>>> ranked;
  std::vector<long> c(degree + 1, -coef_bound);
  const double floor = 1.0 + epsilon.get_d();
  while (true) {
    ++out.scanned;
    if (c[0] != 0 && c[degree] != 0) {
      auto key = detail::symmetry_key(c);
      if (seen.insert(key).second) {
        std::vector<BigInt> big(key.begin(), key.end());
        const IntPolynomial f(big);
        const double m = detail::double_measure(f);
        if (m > floor * (1 - 1e-9)) ranked.emplace_back(m, std::move(key));
      }
    }
    std::size_t i = 0;
    while (i <= degree && c[i] == coef_bound) c[i++] = -coef_bound;
    if (i > degree) break;
    ++c[i];
  }
  out.classes = seen.size();
  std::sort(ranked.begin(), ranked.end());
  for (const auto& [approx, key] : ranked) {
    if (out.measure && approx > out.measure->hi().to_double() * (1 + 1e-6)) break;
    std::vector<BigInt> big(key.begin(), key.end());
    const IntPolynomial f(big);
    const RealEnclosure m = mahler_measure(f, tol);
    ++out.certified;
    if (compare(m.lo(), mpq_class(1 + epsilon)) <= 0) continue;
    if (!out.measure || m.strictly_below(*out.measure)) {
      out.best = f;
      out.measure = m;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline void print_human(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [k, v] : j.items()) {
    if (k == "schema") continue;
    if (v.is_object() && v.contains("lo") && v.contains("hi")) {
      out << pad << k << ": [" << v["lo"].get<std::string>() << ", " << v["hi"].get<std::string>() << "] ("
          << v["precision_bits"] << " bits)\n";
    } else if (v.is_object()) {
      out << pad << k << ":\n";
      print_human(v, out, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << pad << k << ":\n";
      for (const auto& item : v) {
        out << pad << "  -\n";
        print_human(item, out, indent + 4);
      }
    } else if (v.is_string()) {
      out << pad << k << ": " << v.get<std::string>() << "\n";
    } else {
      out << pad << k << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace detail

inline void emit(const json& rec, bool as_json, std::ostream& out) {
  if (as_json) {
    out << rec.dump(2) << "\n";
  } else {
    detail::print_human(rec, out, 0);
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"heights: Mahler measures, Weil heights and metric heights"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  std::string tol_text = "1/1000000000000";
  bool as_json = false;
  long max_length = 0;
  app.add_option("--tol", tol_text, "Enclosure width target, as p/q");
  app.add_flag("--json", as_json, "Emit a JSON record");
  app.add_option("--max-length", max_length, "Maximum witness length for searches");

  std::string poly_text, rational_text, expr_text, file_text, target_text;
  std::string prime_text, constant_text = "1/4";
  unsigned long degree = 0, root = 1;
  long disc = 0, bound = 0, coef_bound = 1;

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of an integer polynomial");
  auto* height = app.add_subcommand("height", "Weil height M(f)^(1/deg f)");
  auto* roots = app.add_subcommand("roots", "Certified root boxes");
  auto* cyclo = app.add_subcommand("cyclo", "Are all roots roots of unity?");
  auto* padic = app.add_subcommand("padic", "Primes at which the roots fail to be units");
  for (auto* s : {mahler, height, roots, cyclo, padic}) s->add_option("poly", poly_text, "e.g. x^2-2x-4")->required();
  padic->add_option("--prime", prime_text, "Test a single prime");

  auto* dobro = app.add_subcommand("dobrowolski", "Dobrowolski-type lower bound");
  dobro->add_option("--degree", degree)->required();
  dobro->add_option("--constant", constant_text, "c as p/q");

  auto* surd = app.add_subcommand("surd", "M_inf, H and degree of the coset of x^(1/d)");
  surd->add_option("rational", rational_text)->required();
  surd->add_option("--root", root, "d");

  auto* surd_op = app.add_subcommand("surd-op", "Products and powers of surd cosets");
  surd_op->add_option("expr", expr_text, "e.g. \"[2^1/2] * [3]^(1/3)\"")->required();

  auto* field_min = app.add_subcommand("field-min", "Smallest height > 1 in a box of Q(sqrt D)");
  field_min->add_option("--disc", disc)->required();
  field_min->add_option("--bound", bound)->required();

  auto* minf = app.add_subcommand("minf-search", "Upper bound for M_inf from a pool file");
  auto* m1 = app.add_subcommand("m1-search", "Upper bound for M_1 from a pool file");
  for (auto* s : {minf, m1}) {
    s->add_option("pool", file_text, "Pool file")->required();
    s->add_option("--target", target_text, "Overrides the file's target");
  }

  auto* framework = app.add_subcommand("framework", "Derived heights and structural checks on a finite group");
  framework->add_option("group", file_text, "Group file")->required();

  auto* scan = app.add_subcommand("lehmer-scan", "Smallest measure above 1 among small polynomials");
  scan->add_option("--degree", degree)->required();
  scan->add_option("--coef-bound", coef_bound);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  const auto started = std::chrono::steady_clock::now();
  json rec = record(app.get_subcommands().front()->get_name());
  int status = kOk;
  try {
    const mpq_class tol = parse_rational(tol_text);
    if (tol <= 0) throw DomainError("--tol must be positive");
    rec["inputs"]["tol"] = to_string(tol);

    if (mahler->parsed() || height->parsed() || roots->parsed() || cyclo->parsed() || padic->parsed()) {
      const IntPolynomial f = parse_polynomial(poly_text);
      rec["inputs"]["poly"] = print_polynomial(f);
      if (mahler->parsed()) {
        rec["value"] = enclosure_json(mahler_measure(f, tol));
      } else if (height->parsed()) {
        rec["value"] = enclosure_json(weil_height(f, tol));
      } else if (roots->parsed()) {
        if (f.degree() < 1) throw DomainError("roots needs degree >= 1");
        json list = json::array();
        for (const auto& [g, mult] : squarefree_decomposition(f)) {
          if (g.degree() == 0) continue;
          for (const auto& b : certified_roots(g, tol)) {
            list.push_back({{"re", b.center.re().to_decimal(kDecimalDigits)},
                            {"im", b.center.im().to_decimal(kDecimalDigits)},
                            {"radius", b.radius.to_decimal(6, MPFR_RNDU)},
                            {"multiplicity", mult}});
          }
        }
        rec["roots"] = list;
      } else if (cyclo->parsed()) {
        rec["value"] = is_root_of_unity(f);
        rec["exact"] = true;
      } else {
        if (!prime_text.empty()) {
          const BigInt p = heights::detail::parse_integer(prime_text, 0);
          rec["inputs"]["prime"] = p.get_str();
          rec["value"] = is_p_adic_unit(f, p);
        } else {
          const IntPolynomial g = canonicalize_poly(f);
          if (g.constant() == 0) throw DomainError("constant term is zero: x = 0 is a root");
          std::set<BigInt> primes;
          for (const BigInt& c : {BigInt(abs(g.constant())), BigInt(abs(g.leading()))}) {
            if (c > 1) {
              for (const auto& [p, e] : factorize(c)) primes.insert(p);
            }
          }
          json list = json::array();
          for (const auto& p : primes) list.push_back(p.get_str());
          rec["value"] = list;
        }
        rec["exact"] = true;
      }
    } else if (dobro->parsed()) {
      const mpq_class c = parse_rational(constant_text);
      rec["inputs"]["degree"] = degree;
      rec["inputs"]["constant"] = to_string(c);
      rec["value"] = enclosure_json(dobrowolski_lower_bound(degree, c));
    } else if (surd->parsed()) {
      const Rational x = parse_rational(rational_text);
      rec["inputs"]["rational"] = to_string(x);
      rec["inputs"]["root"] = root;
      const SurdCoset s = surd_from_rational(x, root);
      rec["value"] = detail::surd_summary(s);
      rec["exact"] = true;
    } else if (surd_op->parsed()) {
      rec["inputs"]["expr"] = expr_text;
      rec["value"] = detail::surd_summary(detail::SurdExprParser(expr_text).parse());
      rec["exact"] = true;
    } else if (field_min->parsed()) {
      rec["inputs"]["disc"] = disc;
      rec["inputs"]["bound"] = bound;
      const QuadCandidate c = qf_enumerate_min_height(disc, bound, tol);
      rec["element"] = to_string(c.element);
      rec["uvw"] = {c.u, c.v, c.w};
      rec["minimal_polynomial"] = print_polynomial(qf_minimal_polynomial(c.element));
      rec["value"] = enclosure_json(c.height);
    } else if (minf->parsed() || m1->parsed()) {
      const PoolSpec spec = load_pool_spec(parse_keyfile(read_text_file(file_text)));
      const std::string target = target_text.empty() ? spec.target.value_or("") : target_text;
      if (target.empty()) throw ParseError("no target given (pool file key 'target' or --target)", 0);
      const std::size_t len = max_length > 0 ? static_cast<std::size_t>(max_length) : spec.max_length;
      const mpq_class search_tol = app.get_option("--tol")->count() > 0 ? tol : spec.tol;
      rec["inputs"] = {{"pool", file_text}, {"kind", spec.kind}, {"target", target},
                       {"max_length", len}, {"tol", to_string(search_tol)}};
      auto fill = [&](const auto& report, const auto& name) {
        rec["value"] = enclosure_json(report.upper);
        rec["mode"] = to_string(report.mode);
        rec["lower"] = to_string(report.lower);
        rec["lower_decimal"] = BigFloat(report.lower, kDefaultPrecision, MPFR_RNDD).to_decimal(kDecimalDigits, MPFR_RNDD);
        rec["pinned"] = report.pinned();
        json w = json::array();
        for (const auto& x : report.witness) w.push_back(name(x));
        rec["witness"] = w;
        rec["explored"] = report.explored;
      };
      auto search = [&](const auto& t, const auto& pool) {
        return minf->parsed() ? search_minf_upper(t, pool, search_tol) : search_m1_upper(t, pool, search_tol);
      };
      if (spec.kind == "rational") {
        const FactorPool<Rational> pool(pool_rationals(spec), len, search_tol);
        rec["pool_size"] = pool.size();
        fill(search(parse_rational(target), pool), [](const Rational& x) { return to_string(x); });
      } else if (spec.kind == "surd") {
        const FactorPool<SurdCoset> pool(pool_surds(spec), len, search_tol);
        rec["pool_size"] = pool.size();
        fill(search(parse_surd(target), pool), [](const SurdCoset& x) { return to_string(x); });
      } else {
        const FactorPool<QuadElement> pool(pool_quads(spec), len, search_tol);
        rec["pool_size"] = pool.size();
        fill(search(parse_quad(target, spec.disc), pool), [](const QuadElement& x) { return to_string(x); });
      }
    } else if (framework->parsed()) {
      const HeightedGroup G = load_group(parse_keyfile(read_text_file(file_text)));
      rec["inputs"] = {{"group", file_text}, {"cyclic", G.group.cyclic_orders()}};
      rec["class"] = to_string(classify_height(G));
      rec["rho"] = detail::table_json(G.group, G.height);
      rec["rho_1"] = detail::table_json(G.group, rho1_exact(G));
      rec["rho_inf"] = detail::table_json(G.group, rho_inf_exact(G));
      json checks = json::array();
      bool all = true;
      for (const auto& c : check_framework_theorems(G)) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        all = all && c.passed;
      }
      rec["checks"] = checks;
      rec["exact"] = true;
      if (!all) status = kInvariant;
    } else if (scan->parsed()) {
      rec["inputs"]["degree"] = degree;
      rec["inputs"]["coef_bound"] = coef_bound;
      const ScanResult r = lehmer_scan(static_cast<unsigned>(degree), coef_bound, tol);
      rec["scanned"] = r.scanned;
      rec["symmetry_classes"] = r.classes;
      rec["certified"] = r.certified;
      if (r.best) {
        rec["polynomial"] = print_polynomial(*r.best);
        rec["value"] = enclosure_json(*r.measure);
      } else {
        rec["value"] = nullptr;
      }
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << "\n";
    return kPrecision;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", elapsed.count());
  rec["diagnostics"] = {{"wall_ms", std::string(ms)}};
  emit(rec, as_json, out);
  return status;
}

}  // namespace heights::cli

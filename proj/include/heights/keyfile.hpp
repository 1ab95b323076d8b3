#pragma once

// Group and pool description files.
//
// A file is a sequence of statements `key = <JSON value>`. A statement starts
// at a line whose first token is an identifier followed by '=' and runs until
// the next such line, so values may span lines. '#' starts a comment outside
// JSON strings. Example group file:
//
//   cyclic = [5]
//   height = {"(0)": "1", "(1)": "5", "(2)": "2", "(3)": "2", "(4)": "5"}
//
// Pool files hold `kind` ("rational", "quad" or "surd"), `members` (strings in
// the matching text form), and optionally `disc`, `max_length`, `tol`,
// `target`, `enumerate_bound` and `enumerate_max_height` (quad only).

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "heights/error.hpp"
#include "heights/exact.hpp"
#include "heights/factor_search.hpp"
#include "heights/metric.hpp"
#include "heights/quad_field.hpp"
#include "heights/surd.hpp"

namespace heights {

namespace detail {

inline std::string strip_comments(std::string_view text) {
  std::string out(text);
  bool in_string = false, escaped = false, in_comment = false;
  for (char& c : out) {
    if (in_comment) {
      if (c == '\n') in_comment = false;
      else c = ' ';
      continue;
    }
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      in_comment = true;
      c = ' ';
    }
  }
  return out;
}

// Length of "identifier\s*=" at the start of `line` after indentation, or 0.
inline std::size_t key_prefix(std::string_view line, std::string& key) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  const std::size_t start = i;
  if (i >= line.size() || !(std::isalpha(static_cast<unsigned char>(line[i])) || line[i] == '_')) return 0;
  while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
  const std::size_t end = i;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i >= line.size() || line[i] != '=') return 0;
  key = std::string(line.substr(start, end - start));
  return i + 1;
}

}  // namespace detail

// Parses the statements into one JSON object. Errors carry byte offsets.
inline nlohmann::json parse_keyfile(std::string_view raw) {
  const std::string text = detail::strip_comments(raw);
  struct Statement {
    std::string key;
    std::size_t value_at;
    std::size_t end;
  };
  std::vector<Statement> statements;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string key;
    const std::string_view line(text.data() + line_start, line_end - line_start);
    if (const std::size_t n = detail::key_prefix(line, key); n > 0) {
      if (!statements.empty()) statements.back().end = line_start;
      statements.push_back({key, line_start + n, text.size()});
    } else if (statements.empty() && !detail::trim(line).empty()) {
      throw ParseError("expected 'key = value'", line_start);
    }
    line_start = line_end + 1;
  }
  nlohmann::json out = nlohmann::json::object();
  for (const auto& s : statements) {
    if (out.contains(s.key)) throw ParseError("duplicate key '" + s.key + "'", s.value_at);
    const std::string value = text.substr(s.value_at, s.end - s.value_at);
    if (detail::trim(value).empty()) throw ParseError("missing value for '" + s.key + "'", s.value_at);
    try {
      out[s.key] = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error& e) {
      const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
      throw ParseError("bad value for '" + s.key + "'", s.value_at + at);
    }
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError("missing key '" + key + "'", 0);
  return doc.at(key);
}

// Rationals may be given as JSON integers or as "p/q" strings.
inline Rational json_rational(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(BigInt(v.dump()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError(what + " must be an integer or a \"p/q\" string", 0);
}

inline long json_long(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer", 0);
  return v.get<long>();
}

inline std::vector<long> parse_tuple(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("element must look like (a1,...,ak)", 0);
  std::vector<long> out;
  std::string_view body = s.substr(1, s.size() - 2);
  while (true) {
    const std::size_t comma = body.find(',');
    const std::string_view part = trim(body.substr(0, comma));
    out.push_back(parse_integer(part, 0).get_si());
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return out;
}

}  // namespace detail

// `cyclic` and a total `height` table keyed by "(a1,...,ak)".
inline HeightedGroup load_group(const nlohmann::json& doc, std::size_t order_cap = kDefaultGroupOrderCap) {
  const auto& cyc = detail::require(doc, "cyclic");
  if (!cyc.is_array()) throw ParseError("'cyclic' must be a list of integers", 0);
  std::vector<long> orders;
  for (const auto& n : cyc) orders.push_back(detail::json_long(n, "cyclic order"));
  FiniteAbelianGroup g(orders, order_cap);

  const auto& table = detail::require(doc, "height");
  if (!table.is_object()) throw ParseError("'height' must be an object", 0);
  std::vector<std::optional<Rational>> h(g.order());
  for (const auto& [label, value] : table.items()) {
    const auto digits = detail::parse_tuple(label);
    if (digits.size() != orders.size()) throw ParseError("element " + label + " has the wrong arity", 0);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] < 0 || digits[i] >= orders[i]) throw ParseError("element " + label + " out of range", 0);
    }
    h[g.from_digits(digits)] = detail::json_rational(value, "height of " + label);
  }
  HeightTable out(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (!h[a]) throw DomainError("height table is missing " + g.label(a));
    out[a] = *h[a];
  }
  return HeightedGroup(std::move(g), std::move(out));
}

struct PoolSpec {
  std::string kind;  // rational | quad | surd
  long disc = 0;
  std::vector<std::string> members;
  std::optional<std::string> target;
  std::size_t max_length = kDefaultMaxLength;
  mpq_class tol = default_tolerance();
  std::optional<long> enumerate_bound;
  std::optional<Rational> enumerate_max_height;
};

inline PoolSpec load_pool_spec(const nlohmann::json& doc) {
  static const std::set<std::string> known = {"kind",         "disc", "members",         "target",
                                              "max_length",   "tol",  "enumerate_bound", "enumerate_max_height"};
  for (const auto& [k, v] : doc.items()) {
    if (!known.count(k)) throw ParseError("unknown key '" + k + "'", 0);
  }
  PoolSpec spec;
  const auto& kind = detail::require(doc, "kind");
  if (!kind.is_string()) throw ParseError("'kind' must be a string", 0);
  spec.kind = kind.get<std::string>();
  if (spec.kind != "rational" && spec.kind != "quad" && spec.kind != "surd") {
    throw ParseError("'kind' must be rational, quad or surd", 0);
  }
  if (doc.contains("disc")) spec.disc = detail::json_long(doc["disc"], "disc");
  if (spec.kind == "quad" && spec.disc == 0) throw ParseError("quad pools need 'disc'", 0);
  if (doc.contains("members")) {
    if (!doc["members"].is_array()) throw ParseError("'members' must be a list of strings", 0);
    for (const auto& m : doc["members"]) {
      if (!m.is_string()) throw ParseError("pool members must be strings", 0);
      spec.members.push_back(m.get<std::string>());
    }
  }
  if (doc.contains("target")) {
    if (!doc["target"].is_string()) throw ParseError("'target' must be a string", 0);
    spec.target = doc["target"].get<std::string>();
  }
  if (doc.contains("max_length")) {
    const long n = detail::json_long(doc["max_length"], "max_length");
    if (n < 1) throw DomainError("max_length must be positive");
    spec.max_length = static_cast<std::size_t>(n);
  }
  if (doc.contains("tol")) {
    spec.tol = detail::json_rational(doc["tol"], "tol");
    if (spec.tol <= 0) throw DomainError("tol must be positive");
  }
  if (doc.contains("enumerate_bound")) {
    if (spec.kind != "quad") throw ParseError("enumerate_bound applies to quad pools only", 0);
    spec.enumerate_bound = detail::json_long(doc["enumerate_bound"], "enumerate_bound");
    spec.enumerate_max_height =
        doc.contains("enumerate_max_height") ? detail::json_rational(doc["enumerate_max_height"], "enumerate_max_height")
                                             : Rational(2);
  }
  if (spec.members.empty() && !spec.enumerate_bound) throw ParseError("pool has no members", 0);
  return spec;
}

inline std::vector<Rational> pool_rationals(const PoolSpec& s) {
  std::vector<Rational> out;
  for (const auto& m : s.members) out.push_back(parse_rational(m));
  return out;
}

inline std::vector<SurdCoset> pool_surds(const PoolSpec& s) {
  std::vector<SurdCoset> out;
  for (const auto& m : s.members) out.push_back(parse_surd(m));
  return out;
}

inline std::vector<QuadElement> pool_quads(const PoolSpec& s) {
  std::vector<QuadElement> out;
  for (const auto& m : s.members) out.push_back(parse_quad(m, s.disc));
  if (s.enumerate_bound) {
    for (const auto& c : qf_enumerate_pool(s.disc, *s.enumerate_bound, *s.enumerate_max_height, s.tol)) {
      out.push_back(c.element);
    }
  }
  return out;
}

}  // namespace heights

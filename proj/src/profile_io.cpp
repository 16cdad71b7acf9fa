#include "lorlab/profile_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "lorlab/error.hpp"

namespace lorlab {
namespace {

double to_real(const YAML::Node& node, const std::string& what, ErrorKind kind) {
  if (!node || !node.IsScalar()) throw Error(kind, fmt::format("{}: expected a number", what));
  const auto s = node.Scalar();
  if (s == "inf" || s == "+inf" || s == ".inf") return kInf;
  if (s == "-inf" || s == "-.inf") return -kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(kind, fmt::format("{}: '{}' is not a number", what, s));
  }
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& allowed,
                    const std::string& where, ErrorKind kind) {
  if (!map.IsMap()) throw Error(kind, fmt::format("{}: expected a mapping", where));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw Error(kind, fmt::format("{}: unknown key '{}'", where, key));
  }
}

YAML::Node parse_yaml(const std::string& text, ErrorKind kind) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(kind, fmt::format("malformed text: {}", e.what()));
  }
}

TermKind term_kind(const std::string& s) {
  if (s == "constant") return TermKind::Constant;
  if (s == "linear") return TermKind::Linear;
  if (s == "power") return TermKind::Power;
  if (s == "exponential") return TermKind::Exponential;
  throw Error(ErrorKind::InvalidProfile, fmt::format("unknown term kind '{}'", s));
}

std::string_view term_name(TermKind k) {
  switch (k) {
    case TermKind::Constant: return "constant";
    case TermKind::Linear: return "linear";
    case TermKind::Power: return "power";
    case TermKind::Exponential: return "exponential";
  }
  return "constant";
}

std::vector<Term> parse_terms(const YAML::Node& node, const std::string& where) {
  constexpr auto K = ErrorKind::InvalidProfile;
  if (!node || !node.IsSequence()) throw Error(K, fmt::format("{}: expected a list of terms", where));
  std::vector<Term> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto t = node[i];
    const auto at = fmt::format("{}[{}]", where, i);
    reject_unknown(t, {"kind", "coeff", "center", "exponent", "rate"}, at, K);
    if (!t["kind"]) throw Error(K, at + ": missing kind");
    Term term;
    term.kind = term_kind(t["kind"].as<std::string>());
    term.coeff = to_real(t["coeff"], at + ".coeff", K);
    if (term.kind == TermKind::Power) {
      term.center = t["center"] ? to_real(t["center"], at + ".center", K) : 0.0;
      term.exponent = to_real(t["exponent"], at + ".exponent", K);
    }
    if (term.kind == TermKind::Exponential) term.rate = to_real(t["rate"], at + ".rate", K);
    out.push_back(term);
  }
  return out;
}

std::string real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

SpacetimePoint to_point(const YAML::Node& node, const std::string& what) {
  constexpr auto K = ErrorKind::Usage;
  if (node && node.IsSequence() && node.size() == 2) {
    return {to_real(node[0], what, K), to_real(node[1], what, K)};
  }
  if (node && node.IsScalar()) {
    const auto s = node.Scalar();
    const auto comma = s.find(',');
    if (comma != std::string::npos) {
      return {to_real(YAML::Node(s.substr(0, comma)), what, K),
              to_real(YAML::Node(s.substr(comma + 1)), what, K)};
    }
  }
  throw Error(K, fmt::format("{}: expected a pair 't, x'", what));
}

}  // namespace

std::vector<MetricProfile> parse_profiles(const std::string& text) {
  constexpr auto K = ErrorKind::InvalidProfile;
  const auto root = parse_yaml(text, K);
  reject_unknown(root, {"profiles"}, "catalog", K);
  const auto list = root["profiles"];
  if (!list || !list.IsSequence()) throw Error(K, "catalog: 'profiles' must be a list");
  std::vector<MetricProfile> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto rec = list[i];
    const auto at = fmt::format("profiles[{}]", i);
    reject_unknown(rec, {"name", "a", "b", "domain", "alpha"}, at, K);
    if (!rec["name"]) throw Error(K, at + ": missing name");
    TimeDomain dom;
    if (rec["domain"]) {
      reject_unknown(rec["domain"], {"lo", "hi"}, at + ".domain", K);
      dom.lo = to_real(rec["domain"]["lo"], at + ".domain.lo", K);
      dom.hi = to_real(rec["domain"]["hi"], at + ".domain.hi", K);
    }
    out.push_back(MetricProfile::create(rec["name"].as<std::string>(),
                                        parse_terms(rec["a"], at + ".a"),
                                        parse_terms(rec["b"], at + ".b"), dom,
                                        to_real(rec["alpha"], at + ".alpha", K)));
  }
  return out;
}

std::vector<MetricProfile> load_profiles(const std::string& path) {
  return parse_profiles(read_text_file(path));
}

std::string format_profiles(const std::vector<MetricProfile>& profiles) {
  std::string out = "profiles:\n";
  auto terms = [&](const char* key, const std::vector<Term>& list) {
    out += fmt::format("    {}:\n", key);
    for (const auto& t : list) {
      out += fmt::format("      - {{kind: {}, coeff: {}", term_name(t.kind), real(t.coeff));
      if (t.kind == TermKind::Power) {
        out += fmt::format(", center: {}, exponent: {}", real(t.center), real(t.exponent));
      }
      if (t.kind == TermKind::Exponential) out += fmt::format(", rate: {}", real(t.rate));
      out += "}\n";
    }
  };
  for (const auto& p : profiles) {
    out += fmt::format("  - name: {}\n", p.name());
    terms("a", p.terms_a());
    terms("b", p.terms_b());
    out += fmt::format("    domain: {{lo: {}, hi: {}}}\n", real(p.domain().lo), real(p.domain().hi));
    out += fmt::format("    alpha: {}\n", real(p.alpha()));
  }
  return out;
}

ImplicationConfig parse_probe_config(const std::string& text, ImplicationConfig cfg) {
  constexpr auto K = ErrorKind::Usage;
  const auto root = parse_yaml(text, K);
  if (root.IsNull()) return cfg;
  reject_unknown(root,
                 {"p", "q", "fc_bound", "ca_bounds", "directions", "cauchy_sequence",
                  "cauchy_bounds", "cauchy_terms", "slices", "witness_terms", "cauchy_tol"},
                 "probe config", K);
  auto reals = [&](const char* key) {
    const auto node = root[key];
    if (!node.IsSequence()) throw Error(K, fmt::format("{}: expected a list", key));
    std::vector<double> v;
    for (const auto& n : node) v.push_back(to_real(n, key, K));
    return v;
  };
  auto points = [&](const char* key) {
    const auto node = root[key];
    if (!node.IsSequence()) throw Error(K, fmt::format("{}: expected a list", key));
    std::vector<SpacetimePoint> v;
    for (const auto& n : node) v.push_back(to_point(n, key));
    return v;
  };
  auto count = [&](const char* key) {
    const double v = to_real(root[key], key, K);
    if (!(v >= 1.0) || v != std::floor(v)) throw Error(K, fmt::format("{}: expected a positive integer", key));
    return static_cast<int>(v);
  };
  if (root["p"]) cfg.p = to_point(root["p"], "p");
  if (root["q"]) cfg.q = to_point(root["q"], "q");
  if (root["fc_bound"]) cfg.fc_bound = to_real(root["fc_bound"], "fc_bound", K);
  if (root["ca_bounds"]) cfg.ca_bounds = reals("ca_bounds");
  if (root["directions"]) {
    cfg.directions.clear();
    for (const auto& d : points("directions")) cfg.directions.push_back({d.t, d.x});
  }
  if (root["cauchy_sequence"]) cfg.cauchy_sequence = points("cauchy_sequence");
  if (root["cauchy_bounds"]) cfg.cauchy_bounds = reals("cauchy_bounds");
  if (root["cauchy_terms"]) cfg.cauchy_terms = count("cauchy_terms");
  if (root["slices"]) cfg.options.slices = count("slices");
  if (root["witness_terms"]) cfg.options.witness_terms = count("witness_terms");
  if (root["cauchy_tol"]) cfg.options.cauchy_tol = to_real(root["cauchy_tol"], "cauchy_tol", K);
  if (cfg.cauchy_sequence.size() != cfg.cauchy_bounds.size()) {
    throw Error(K, "cauchy_sequence and cauchy_bounds must have equal length");
  }
  return cfg;
}

ImplicationConfig load_probe_config(const std::string& path, ImplicationConfig base) {
  return parse_probe_config(read_text_file(path), std::move(base));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lorlab

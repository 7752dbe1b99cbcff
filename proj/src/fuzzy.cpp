#include "edgetrust/fuzzy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "edgetrust/errors.hpp"

namespace edgetrust::fuzzy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::integrity_error, what);
}

}  // namespace

double membership(const TriangularMf& mf, double x) {
  if (x == mf.b) {
    return 1.0;
  }
  if (x < mf.b) {
    if (std::isinf(mf.a)) {
      return 1.0;  // left shoulder
    }
    if (x <= mf.a) {
      return 0.0;
    }
    return (x - mf.a) / (mf.b - mf.a);
  }
  if (std::isinf(mf.c)) {
    return 1.0;  // right shoulder
  }
  if (x >= mf.c) {
    return 0.0;
  }
  return (mf.c - x) / (mf.c - mf.b);
}

int LinguisticVariable::term_index(std::string_view label) const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].label == label) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<double> fuzzify(const LinguisticVariable& var, double x) {
  x = std::clamp(x, var.lo, var.hi);
  std::vector<double> degrees(var.terms.size());
  bool any = false;
  for (std::size_t i = 0; i < var.terms.size(); ++i) {
    degrees[i] = membership(var.terms[i].mf, x);
    any = any || degrees[i] > 0.0;
  }
  if (!any && !var.terms.empty()) {
    // Coverage gap: the nearest peak absorbs the input. Ties go to the first
    // or last candidate per the variable's fallback direction.
    std::size_t best = 0;
    double best_dist = kInf;
    for (std::size_t k = 0; k < var.terms.size(); ++k) {
      std::size_t i = var.gap_fallback == GapFallback::toward_last ? var.terms.size() - 1 - k : k;
      double dist = std::abs(x - var.terms[i].mf.b);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    degrees[best] = 1.0;
  }
  return degrees;
}

void FuzzyConfig::validate() const {
  for (const LinguisticVariable* var : {&positive, &negative, &output}) {
    if (var->name.empty()) {
      bad_config("variable without a name");
    }
    if (!(var->lo < var->hi)) {
      bad_config("variable '" + var->name + "': universe is empty");
    }
    if (var->terms.empty()) {
      bad_config("variable '" + var->name + "': no terms");
    }
    double prev_peak = -kInf;
    for (const Term& term : var->terms) {
      if (term.label.empty() ||
          term.label.find_first_of(" \t\r\n") != std::string::npos) {
        bad_config("variable '" + var->name + "': term label must be a single token");
      }
      if (var->term_index(term.label) != static_cast<int>(&term - var->terms.data())) {
        bad_config("variable '" + var->name + "': duplicate term '" + term.label + "'");
      }
      const TriangularMf& mf = term.mf;
      if (std::isnan(mf.a) || std::isnan(mf.b) || std::isnan(mf.c) || std::isinf(mf.b) ||
          !(mf.a <= mf.b && mf.b <= mf.c)) {
        bad_config("term '" + term.label + "': malformed membership function");
      }
      if (mf.b < prev_peak) {
        bad_config("variable '" + var->name + "': terms out of peak order");
      }
      prev_peak = mf.b;
    }
  }
  if (samples < 2) {
    bad_config("discretization needs at least 2 samples");
  }
  // Every antecedent pair must be covered by exactly one rule, so some rule
  // always fires and the aggregate is never empty.
  std::map<std::pair<int, int>, int> coverage;
  for (const Rule& rule : rules) {
    int pi = positive.term_index(rule.pos_label);
    int ni = negative.term_index(rule.neg_label);
    int oi = output.term_index(rule.consequent_label);
    if (pi < 0 || ni < 0 || oi < 0) {
      bad_config("rule (" + rule.pos_label + ", " + rule.neg_label + " -> " +
                 rule.consequent_label + ") names an unknown term");
    }
    if (!(rule.weight >= 0.0) || rule.weight > 1.0) {
      bad_config("rule weight must lie in [0, 1]");
    }
    coverage[{pi, ni}] += 1;
  }
  for (std::size_t pi = 0; pi < positive.terms.size(); ++pi) {
    for (std::size_t ni = 0; ni < negative.terms.size(); ++ni) {
      auto it = coverage.find({static_cast<int>(pi), static_cast<int>(ni)});
      int n = it == coverage.end() ? 0 : it->second;
      if (n != 1) {
        bad_config("antecedent pair (" + positive.terms[pi].label + ", " +
                   negative.terms[ni].label + ") is covered by " + std::to_string(n) +
                   " rules, expected 1");
      }
    }
  }
}

FuzzyConfig FuzzyConfig::standard() {
  FuzzyConfig config;
  config.positive = LinguisticVariable{
      "positive",
      0.0,
      20.0,
      {
          {"Low", {-kInf, 0.0, 8.0}},
          {"Normal", {5.0, 10.0, 15.0}},
          {"High", {12.0, 20.0, kInf}},
      },
      GapFallback::toward_first,
  };
  config.negative = LinguisticVariable{
      "negative",
      0.0,
      5.0,
      {
          {"Low", {-1.0, 0.0, 1.0}},
          {"High", {1.0, 2.0, 3.0}},
          {"Plenty", {2.0, 5.0, kInf}},
      },
      GapFallback::toward_last,
  };
  config.output = LinguisticVariable{
      "trust",
      0.0,
      1.0,
      {
          {"T1", {-kInf, 0.00186, 0.127}},
          {"T2", {0.0, 0.125, 0.25}},
          {"T3", {0.125, 0.25, 0.375}},
          {"T4", {0.25, 0.375, 0.5}},
          {"T5", {0.375, 0.5, 0.625}},
          {"T6", {0.5, 0.625, 0.75}},
          {"T7", {0.625, 0.75, 0.875}},
          {"T8", {0.75, 0.875, 1.0}},
          {"T9", {0.875, 1.0, kInf}},
      },
      GapFallback::toward_first,
  };
  config.rules = {
      {"High", "Low", "T9", 1.0},    {"Normal", "Low", "T8", 1.0},
      {"Low", "Low", "T7", 1.0},     {"High", "High", "T6", 1.0},
      {"High", "Plenty", "T5", 1.0}, {"Normal", "High", "T4", 1.0},
      {"Normal", "Plenty", "T3", 1.0}, {"Low", "High", "T2", 1.0},
      {"Low", "Plenty", "T1", 1.0},
  };
  config.samples = 1001;
  return config;
}

AggregatedOutput infer(const FuzzyConfig& config, double pos, double neg) {
  std::vector<double> pos_degrees = fuzzify(config.positive, pos);
  std::vector<double> neg_degrees = fuzzify(config.negative, neg);

  struct Firing {
    double strength;
    const TriangularMf* consequent;
  };
  std::vector<Firing> firings;
  firings.reserve(config.rules.size());
  for (const Rule& rule : config.rules) {
    int pi = config.positive.term_index(rule.pos_label);
    int ni = config.negative.term_index(rule.neg_label);
    int oi = config.output.term_index(rule.consequent_label);
    if (pi < 0 || ni < 0 || oi < 0) {
      bad_config("rule references an unknown term");
    }
    double strength = std::min(pos_degrees[pi], neg_degrees[ni]) * rule.weight;
    if (strength > 0.0) {
      firings.push_back({strength, &config.output.terms[oi].mf});
    }
  }

  AggregatedOutput aggregate;
  aggregate.lo = config.output.lo;
  aggregate.hi = config.output.hi;
  aggregate.mu.assign(static_cast<std::size_t>(config.samples), 0.0);
  for (std::size_t i = 0; i < aggregate.mu.size(); ++i) {
    double x = aggregate.x_at(i);
    double mu = 0.0;
    for (const Firing& firing : firings) {
      mu = std::max(mu, std::min(firing.strength, membership(*firing.consequent, x)));
    }
    aggregate.mu[i] = mu;
  }
  return aggregate;
}

double defuzzify_centroid(const AggregatedOutput& aggregate) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < aggregate.mu.size(); ++i) {
    num += aggregate.x_at(i) * aggregate.mu[i];
    den += aggregate.mu[i];
  }
  if (den <= 0.0) {
    throw Error(ErrorCode::empty_aggregate, "aggregate has no positive sample");
  }
  return num / den;
}

double trust_score(const FuzzyConfig& config, double pos, double neg) {
  return defuzzify_centroid(infer(config, pos, neg));
}

namespace {

std::string format_number(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_number(std::string_view token, int line_no) {
  if (token == "inf" || token == "+inf") {
    return kInf;
  }
  if (token == "-inf") {
    return -kInf;
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line_no) + ": bad number '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) {
    tokens.push_back(token);
  }
  return tokens;
}

void write_variable(std::ostream& out, const LinguisticVariable& var) {
  out << "variable " << var.name << ' ' << format_number(var.lo) << ' ' << format_number(var.hi)
      << " gap " << (var.gap_fallback == GapFallback::toward_first ? "first" : "last") << '\n';
  for (const Term& term : var.terms) {
    out << "term " << term.label << ' ' << format_number(term.mf.a) << ' '
        << format_number(term.mf.b) << ' ' << format_number(term.mf.c) << '\n';
  }
}

}  // namespace

void save_config(const FuzzyConfig& config, std::ostream& out) {
  config.validate();
  out << "# Mamdani trust engine configuration\n";
  out << "samples " << config.samples << '\n';
  write_variable(out, config.positive);
  write_variable(out, config.negative);
  write_variable(out, config.output);
  for (const Rule& rule : config.rules) {
    out << "rule " << rule.pos_label << ' ' << rule.neg_label << ' ' << rule.consequent_label
        << ' ' << format_number(rule.weight) << '\n';
  }
}

void save_config(const FuzzyConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  }
  save_config(config, out);
  if (!out.good()) {
    throw Error(ErrorCode::io_error, "write to " + path.string() + " failed");
  }
}

FuzzyConfig load_config(std::istream& in) {
  FuzzyConfig config;
  config.rules.clear();
  std::vector<LinguisticVariable> variables;
  std::string line;
  int line_no = 0;
  bool saw_samples = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '#') {
      continue;
    }
    std::vector<std::string> tokens = split_tokens(line);
    if (tokens.empty()) {
      continue;
    }
    const std::string& directive = tokens[0];
    if (directive == "samples") {
      if (tokens.size() != 2) {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_no) + ": samples takes one value");
      }
      config.samples = static_cast<int>(parse_number(tokens[1], line_no));
      saw_samples = true;
    } else if (directive == "variable") {
      if (tokens.size() != 6 || tokens[4] != "gap" || (tokens[5] != "first" && tokens[5] != "last")) {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_no) +
                        ": expected 'variable <name> <lo> <hi> gap first|last'");
      }
      LinguisticVariable var;
      var.name = tokens[1];
      var.lo = parse_number(tokens[2], line_no);
      var.hi = parse_number(tokens[3], line_no);
      var.gap_fallback = tokens[5] == "first" ? GapFallback::toward_first : GapFallback::toward_last;
      variables.push_back(std::move(var));
    } else if (directive == "term") {
      if (tokens.size() != 5) {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_no) + ": expected 'term <label> <a> <b> <c>'");
      }
      if (variables.empty()) {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_no) + ": term before any variable");
      }
      Term term;
      term.label = tokens[1];
      term.mf = {parse_number(tokens[2], line_no), parse_number(tokens[3], line_no),
                 parse_number(tokens[4], line_no)};
      variables.back().terms.push_back(std::move(term));
    } else if (directive == "rule") {
      if (tokens.size() != 5) {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_no) +
                        ": expected 'rule <pos> <neg> <consequent> <weight>'");
      }
      config.rules.push_back(
          Rule{tokens[1], tokens[2], tokens[3], parse_number(tokens[4], line_no)});
    } else {
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(line_no) + ": unknown directive '" + directive + "'");
    }
  }
  if (variables.size() != 3) {
    throw Error(ErrorCode::parse_error,
                "expected 3 variables (positive, negative, output), found " +
                    std::to_string(variables.size()));
  }
  if (!saw_samples) {
    throw Error(ErrorCode::parse_error, "missing 'samples' directive");
  }
  config.positive = std::move(variables[0]);
  config.negative = std::move(variables[1]);
  config.output = std::move(variables[2]);
  config.validate();
  return config;
}

FuzzyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  return load_config(in);
}

}  // namespace edgetrust::fuzzy

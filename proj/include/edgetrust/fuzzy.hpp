#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace edgetrust::fuzzy {

/// Triangular membership function with feet a and c and peak b, a <= b <= c.
/// An infinite foot flattens that side into a shoulder: membership stays 1
/// everywhere beyond the peak.
struct TriangularMf {
  double a = 0;
  double b = 0;
  double c = 0;

  bool operator==(const TriangularMf&) const = default;
};

/// Piecewise-linear evaluation of mf at x, in [0, 1].
double membership(const TriangularMf& mf, double x);

/// Which term absorbs an input that every membership function maps to zero.
enum class GapFallback { toward_first, toward_last };

struct Term {
  std::string label;
  TriangularMf mf;

  bool operator==(const Term&) const = default;
};

/// Named quantity partitioned into fuzzy terms over a closed universe.
struct LinguisticVariable {
  std::string name;
  double lo = 0;
  double hi = 1;
  std::vector<Term> terms;
  GapFallback gap_fallback = GapFallback::toward_first;

  /// Index of the term with this label, or -1.
  int term_index(std::string_view label) const;

  bool operator==(const LinguisticVariable&) const = default;
};

/// Membership degree of x in every term, aligned with var.terms. x is clipped
/// to the universe first. If every degree comes out zero (a coverage gap),
/// the term whose peak is nearest gets degree 1; ties go to the first or last
/// candidate per the variable's gap_fallback.
std::vector<double> fuzzify(const LinguisticVariable& var, double x);

struct Rule {
  std::string pos_label;
  std::string neg_label;
  std::string consequent_label;
  double weight = 1.0;

  bool operator==(const Rule&) const = default;
};

/// A complete Mamdani system: two input variables, the output variable, the
/// rule base, and the output discretization. Immutable once validated.
struct FuzzyConfig {
  LinguisticVariable positive;
  LinguisticVariable negative;
  LinguisticVariable output;
  std::vector<Rule> rules;
  int samples = 1001;

  /// Structural checks: well-formed membership functions, unique labels,
  /// resolvable rule labels, exactly one rule per antecedent pair.
  void validate() const;

  /// The shipped trust configuration: positive behavior on [0,20] with terms
  /// Low/Normal/High, negative behavior on [0,5] with Low/High/Plenty, trust
  /// output T1..T9 on [0,1], and the nine-rule base.
  static FuzzyConfig standard();

  bool operator==(const FuzzyConfig&) const = default;
};

/// Aggregated output set sampled uniformly on [lo, hi], endpoints included.
struct AggregatedOutput {
  double lo = 0;
  double hi = 1;
  std::vector<double> mu;

  double x_at(std::size_t i) const {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(mu.size() - 1);
  }
};

/// Runs the rule base on (pos, neg): antecedents combine by min, consequents
/// are clipped at the firing strength, clipped sets aggregate pointwise by
/// max over `samples` points of the output universe.
AggregatedOutput infer(const FuzzyConfig& config, double pos, double neg);

/// Centroid of the sampled set: sum(x * mu) / sum(mu). An identically zero
/// aggregate has no centroid and is rejected.
double defuzzify_centroid(const AggregatedOutput& aggregate);

/// Full pipeline: fuzzify, infer, defuzzify. Result lies in the output
/// universe.
double trust_score(const FuzzyConfig& config, double pos, double neg);

/// Plain-text serialization. Infinite feet are written as "inf" / "-inf";
/// floats round-trip exactly. save_config(standard()) reproduces the shipped
/// configs/trust_fuzzy.cfg byte for byte.
void save_config(const FuzzyConfig& config, std::ostream& out);
void save_config(const FuzzyConfig& config, const std::filesystem::path& path);
FuzzyConfig load_config(std::istream& in);
FuzzyConfig load_config(const std::filesystem::path& path);

}  // namespace edgetrust::fuzzy

#include "edgetrust/fuzzy.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "edgetrust/errors.hpp"
#include "gtest/gtest.h"
#include "support/reference.hpp"

using namespace edgetrust;
using namespace edgetrust::fuzzy;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AggregatedOutput sample_mf(const TriangularMf& mf, double clip, int n) {
  AggregatedOutput out;
  out.lo = 0;
  out.hi = 1;
  out.mu.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.mu[i] = std::min(clip, membership(mf, out.x_at(i)));
  }
  return out;
}

}  // namespace

TEST(MembershipTest, triangle_peak) {
  EXPECT_DOUBLE_EQ(membership({5, 10, 15}, 10), 1.0);
}

TEST(MembershipTest, linear_rise_midpoint) {
  EXPECT_DOUBLE_EQ(membership({5, 10, 15}, 7.5), 0.5);
}

TEST(MembershipTest, right_shoulder_stays_one) {
  EXPECT_DOUBLE_EQ(membership({12, 20, kInf}, 30), 1.0);
  EXPECT_DOUBLE_EQ(membership({12, 20, kInf}, 20), 1.0);
  EXPECT_DOUBLE_EQ(membership({12, 20, kInf}, 16), 0.5);
}

TEST(MembershipTest, left_shoulder_stays_one) {
  EXPECT_DOUBLE_EQ(membership({-kInf, 0, 8}, -5), 1.0);
  EXPECT_DOUBLE_EQ(membership({-kInf, 0, 8}, 0), 1.0);
  EXPECT_DOUBLE_EQ(membership({-kInf, 0, 8}, 4), 0.5);
}

TEST(MembershipTest, zero_outside_support) {
  EXPECT_DOUBLE_EQ(membership({5, 10, 15}, 5), 0.0);
  EXPECT_DOUBLE_EQ(membership({5, 10, 15}, 15), 0.0);
  EXPECT_DOUBLE_EQ(membership({5, 10, 15}, 100), 0.0);
}

TEST(MembershipTest, piecewise_linear_between_random_points) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pick(5.0, 10.0);
  TriangularMf mf{5, 10, 15};
  for (int i = 0; i < 1000; ++i) {
    double x0 = pick(rng);
    double x1 = pick(rng);
    double mid = (x0 + x1) / 2;
    double expected = (membership(mf, x0) + membership(mf, x1)) / 2;
    EXPECT_NEAR(membership(mf, mid), expected, 1e-12);
  }
}

TEST(MembershipTest, always_in_unit_interval) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pick(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    double mu = membership({-2, 1, 7}, pick(rng));
    EXPECT_GE(mu, 0.0);
    EXPECT_LE(mu, 1.0);
  }
}

TEST(FuzzifyTest, positive_peak_at_ten) {
  FuzzyConfig config = FuzzyConfig::standard();
  std::vector<double> degrees = fuzzify(config.positive, 10);
  EXPECT_DOUBLE_EQ(degrees[0], 0.0);
  EXPECT_DOUBLE_EQ(degrees[1], 1.0);
  EXPECT_DOUBLE_EQ(degrees[2], 0.0);
}

TEST(FuzzifyTest, negative_one_resolved_by_gap_rule) {
  // Low(-1,0,1) and High(1,2,3) both evaluate to 0 at x=1; nearest peaks 0
  // and 2 tie, and the tie goes to the more severe term.
  FuzzyConfig config = FuzzyConfig::standard();
  std::vector<double> degrees = fuzzify(config.negative, 1);
  EXPECT_DOUBLE_EQ(degrees[0], 0.0);
  EXPECT_DOUBLE_EQ(degrees[1], 1.0);
  EXPECT_DOUBLE_EQ(degrees[2], 0.0);
}

TEST(FuzzifyTest, positive_six_interpolates) {
  FuzzyConfig config = FuzzyConfig::standard();
  std::vector<double> degrees = fuzzify(config.positive, 6);
  EXPECT_DOUBLE_EQ(degrees[0], 0.25);
  EXPECT_NEAR(degrees[1], 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(degrees[2], 0.0);
}

TEST(FuzzifyTest, inputs_clip_to_universe) {
  FuzzyConfig config = FuzzyConfig::standard();
  EXPECT_EQ(fuzzify(config.positive, 25), fuzzify(config.positive, 20));
  EXPECT_EQ(fuzzify(config.negative, 9), fuzzify(config.negative, 5));
  EXPECT_EQ(fuzzify(config.negative, -3), fuzzify(config.negative, 0));
}

TEST(FuzzifyTest, gap_tie_break_follows_variable_policy) {
  LinguisticVariable var;
  var.name = "v";
  var.lo = 0;
  var.hi = 10;
  var.terms = {{"A", {0, 0, 1}}, {"B", {5, 6, 7}}};
  var.gap_fallback = GapFallback::toward_first;
  // x=3 is a coverage gap: peak distances are 3 (A) and 3 (B).
  std::vector<double> first = fuzzify(var, 3);
  EXPECT_DOUBLE_EQ(first[0], 1.0);
  EXPECT_DOUBLE_EQ(first[1], 0.0);

  var.gap_fallback = GapFallback::toward_last;
  std::vector<double> last = fuzzify(var, 3);
  EXPECT_DOUBLE_EQ(last[0], 0.0);
  EXPECT_DOUBLE_EQ(last[1], 1.0);
}

TEST(ConfigTest, standard_is_valid) {
  FuzzyConfig config = FuzzyConfig::standard();
  EXPECT_NO_THROW(config.validate());
  EXPECT_EQ(config.rules.size(), 9u);
  EXPECT_EQ(config.samples, 1001);
  EXPECT_EQ(config.positive.terms.size(), 3u);
  EXPECT_EQ(config.negative.terms.size(), 3u);
  EXPECT_EQ(config.output.terms.size(), 9u);
}

TEST(ConfigTest, rule_table_is_monotone_in_both_antecedents) {
  // Consequent index must fall as the negative label worsens at fixed
  // positive label, and rise as the positive label improves at fixed
  // negative label.
  FuzzyConfig config = FuzzyConfig::standard();
  int consequent[3][3];  // [pos term][neg term] -> output term index
  for (const Rule& rule : config.rules) {
    int pi = config.positive.term_index(rule.pos_label);
    int ni = config.negative.term_index(rule.neg_label);
    int oi = config.output.term_index(rule.consequent_label);
    ASSERT_GE(pi, 0);
    ASSERT_GE(ni, 0);
    ASSERT_GE(oi, 0);
    consequent[pi][ni] = oi;
    EXPECT_DOUBLE_EQ(rule.weight, 1.0);
  }
  for (int pi = 0; pi < 3; ++pi) {
    EXPECT_GE(consequent[pi][0], consequent[pi][1]);
    EXPECT_GE(consequent[pi][1], consequent[pi][2]);
  }
  for (int ni = 0; ni < 3; ++ni) {
    EXPECT_LE(consequent[0][ni], consequent[1][ni]);
    EXPECT_LE(consequent[1][ni], consequent[2][ni]);
  }
}

TEST(ConfigTest, validation_rejects_malformed_systems) {
  FuzzyConfig config = FuzzyConfig::standard();
  config.rules.pop_back();  // antecedent pair now uncovered
  EXPECT_THROW(config.validate(), Error);

  config = FuzzyConfig::standard();
  config.rules[0].consequent_label = "T42";
  EXPECT_THROW(config.validate(), Error);

  config = FuzzyConfig::standard();
  config.positive.terms[1].label = "Low";  // duplicate
  EXPECT_THROW(config.validate(), Error);

  config = FuzzyConfig::standard();
  config.samples = 1;
  EXPECT_THROW(config.validate(), Error);

  config = FuzzyConfig::standard();
  config.negative.terms[1].mf = {3, 2, 1};  // a > b
  EXPECT_THROW(config.validate(), Error);
}

TEST(InferTest, single_rule_at_normal_high) {
  // (10, 2) fires only Normal & High -> T4 at strength 1: the aggregate is
  // exactly the T4 triangle.
  FuzzyConfig config = FuzzyConfig::standard();
  AggregatedOutput aggregate = infer(config, 10, 2);
  ASSERT_EQ(aggregate.mu.size(), 1001u);
  EXPECT_DOUBLE_EQ(aggregate.mu[375], 1.0);   // x = 0.375, T4 peak
  EXPECT_DOUBLE_EQ(aggregate.mu[250], 0.0);   // x = 0.250, T4 left foot
  EXPECT_DOUBLE_EQ(aggregate.mu[500], 0.0);   // x = 0.500, T4 right foot
  EXPECT_DOUBLE_EQ(aggregate.mu[750], 0.0);   // far from the support
}

TEST(InferTest, single_rule_at_high_low) {
  FuzzyConfig config = FuzzyConfig::standard();
  AggregatedOutput aggregate = infer(config, 20, 0);
  EXPECT_DOUBLE_EQ(aggregate.mu[1000], 1.0);  // x = 1.0, T9 shoulder
  EXPECT_DOUBLE_EQ(aggregate.mu[875], 0.0);   // x = 0.875, T9 left foot
  EXPECT_DOUBLE_EQ(aggregate.mu[0], 0.0);
}

TEST(InferTest, two_partial_rules_at_six) {
  // pos=6, neg=0: Normal & Low -> T8 at 0.2 and Low & Low -> T7 at 0.25.
  FuzzyConfig config = FuzzyConfig::standard();
  AggregatedOutput aggregate = infer(config, 6, 0);
  EXPECT_NEAR(aggregate.mu[875], 0.2, 1e-12);  // T8 peak clipped at 0.2
  EXPECT_NEAR(aggregate.mu[750], 0.25, 1e-12);  // T7 peak clipped at 0.25
}

TEST(DefuzzifyTest, symmetric_triangle_centers_on_peak) {
  AggregatedOutput aggregate = sample_mf({0.25, 0.375, 0.5}, 1.0, 1001);
  EXPECT_NEAR(defuzzify_centroid(aggregate), 0.375, 1e-3);
}

TEST(DefuzzifyTest, constant_function_centers_on_half) {
  AggregatedOutput aggregate;
  aggregate.lo = 0;
  aggregate.hi = 1;
  aggregate.mu.assign(1001, 1.0);
  EXPECT_NEAR(defuzzify_centroid(aggregate), 0.5, 1e-3);
}

TEST(DefuzzifyTest, clipped_shoulder_stays_in_support) {
  AggregatedOutput aggregate = sample_mf({0.875, 1.0, kInf}, 0.6, 100001);
  double value = defuzzify_centroid(aggregate);
  EXPECT_GE(value, 0.875);
  EXPECT_LE(value, 1.0);
}

TEST(DefuzzifyTest, empty_aggregate_rejected) {
  AggregatedOutput aggregate;
  aggregate.mu.assign(1001, 0.0);
  try {
    defuzzify_centroid(aggregate);
    FAIL() << "all-zero aggregate produced a centroid";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::empty_aggregate);
  }
}

TEST(TrustScoreTest, normal_high_pair) {
  FuzzyConfig config = FuzzyConfig::standard();
  EXPECT_NEAR(trust_score(config, 10, 2), 0.375, 0.005);
}

TEST(TrustScoreTest, idle_device) {
  FuzzyConfig config = FuzzyConfig::standard();
  EXPECT_NEAR(trust_score(config, 0, 0), 0.75, 0.005);
}

TEST(TrustScoreTest, extremes_stay_in_consequent_support) {
  FuzzyConfig config = FuzzyConfig::standard();
  double best = trust_score(config, 20, 0);
  EXPECT_GE(best, 0.875);
  EXPECT_LE(best, 1.0);
  double worst = trust_score(config, 0, 5);
  EXPECT_GE(worst, 0.0);
  EXPECT_LE(worst, 0.127);
}

TEST(TrustScoreTest, grid_stays_in_unit_interval) {
  FuzzyConfig config = FuzzyConfig::standard();
  for (int pos = 0; pos <= 20; ++pos) {
    for (int neg = 0; neg <= 5; ++neg) {
      double value = trust_score(config, pos, neg);
      EXPECT_GE(value, 0.0) << "pos=" << pos << " neg=" << neg;
      EXPECT_LE(value, 1.0) << "pos=" << pos << " neg=" << neg;
    }
  }
}

TEST(TrustScoreTest, matches_independent_reference_everywhere) {
  FuzzyConfig config = FuzzyConfig::standard();
  for (int pos = 0; pos <= 20; ++pos) {
    for (int neg = 0; neg <= 5; ++neg) {
      double expected = testref::reference_trust_score(pos, neg, config.samples);
      EXPECT_NEAR(trust_score(config, pos, neg), expected, 1e-9)
          << "pos=" << pos << " neg=" << neg;
    }
  }
}

TEST(TrustScoreTest, lone_symmetric_consequent_scores_its_peak) {
  FuzzyConfig config = FuzzyConfig::standard();
  struct Case {
    double pos, neg, peak;
  };
  // Peak-input pairs whose single firing rule has a bounded symmetric
  // consequent triangle.
  const Case cases[] = {
      {10, 0, 0.875}, {0, 0, 0.75}, {20, 2, 0.625}, {20, 5, 0.5},
      {10, 2, 0.375}, {10, 5, 0.25}, {0, 2, 0.125},
  };
  for (const Case& c : cases) {
    EXPECT_NEAR(trust_score(config, c.pos, c.neg), c.peak, 0.005)
        << "pos=" << c.pos << " neg=" << c.neg;
  }
}

TEST(ConfigIoTest, standard_round_trips_through_text) {
  FuzzyConfig config = FuzzyConfig::standard();
  std::ostringstream out;
  save_config(config, out);
  std::istringstream in(out.str());
  EXPECT_EQ(load_config(in), config);
}

TEST(ConfigIoTest, custom_config_round_trips) {
  FuzzyConfig config = FuzzyConfig::standard();
  config.samples = 501;
  config.rules[3].weight = 0.625;
  config.positive.gap_fallback = GapFallback::toward_last;
  std::ostringstream out;
  save_config(config, out);
  std::istringstream in(out.str());
  EXPECT_EQ(load_config(in), config);
}

TEST(ConfigIoTest, shipped_file_matches_standard_exactly) {
  FuzzyConfig loaded = load_config(std::filesystem::path(GOLDEN_CONFIG_PATH));
  EXPECT_EQ(loaded, FuzzyConfig::standard());

  std::ifstream file(GOLDEN_CONFIG_PATH, std::ios::binary);
  ASSERT_TRUE(file.is_open());
  std::ostringstream file_bytes;
  file_bytes << file.rdbuf();
  std::ostringstream generated;
  save_config(FuzzyConfig::standard(), generated);
  EXPECT_EQ(generated.str(), file_bytes.str());
}

TEST(ConfigIoTest, parse_errors_name_the_line) {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      load_config(in);
      FAIL() << "malformed config accepted: " << text;
    } catch (const Error& error) {
      EXPECT_EQ(error.code(), ErrorCode::parse_error);
      EXPECT_NE(std::string(error.what()).find(needle), std::string::npos)
          << "message was: " << error.what();
    }
  };
  expect_parse_error("samples 1001\nvariable v 0 1\n", "line 2");
  expect_parse_error("samples 1001\nnonsense a b c\n", "line 2");
  expect_parse_error("samples 1001\nvariable v 0 one gap first\n", "line 2");
  expect_parse_error("samples 1001\nterm T 0 1 2\n", "term before any variable");
  expect_parse_error("samples 1001\n", "expected 3 variables");
}

TEST(ConfigIoTest, missing_samples_rejected) {
  FuzzyConfig config = FuzzyConfig::standard();
  std::ostringstream out;
  save_config(config, out);
  std::string text = out.str();
  std::string::size_type at = text.find("samples 1001\n");
  ASSERT_NE(at, std::string::npos);
  text.erase(at, 13);
  std::istringstream in(text);
  try {
    load_config(in);
    FAIL() << "config without samples accepted";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::parse_error);
  }
}

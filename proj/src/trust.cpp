#include "edgetrust/trust.hpp"

#include <algorithm>
#include <cstdlib>

#include "edgetrust/errors.hpp"

namespace edgetrust {

void ActivityLog::append(ActivityRecord record) {
  if (record.uid != uid_) {
    throw Error(ErrorCode::wrong_device, "record uid does not match this log");
  }
  records_.push_back(std::move(record));
}

WindowBounds window_bounds(Timestamp curr, const WindowConfig& config) {
  WindowBounds bounds;
  bounds.positive = std::abs(curr - config.pos_boundary);
  bounds.negative = std::abs(curr - config.neg_boundary);
  if (bounds.negative < bounds.positive) {
    throw Error(ErrorCode::invalid_window,
                "negative window must be at least as wide as the positive window");
  }
  return bounds;
}

QualifiedCounts qualify_actions(const ActivityLog& log, Timestamp curr,
                                const WindowConfig& config) {
  WindowBounds bounds = window_bounds(curr, config);
  QualifiedCounts counts;
  for (const ActivityRecord& record : log.records()) {
    Timestamp age = curr - record.action_time;
    if (age < 0) {
      continue;  // future-dated
    }
    if (record.kind == ActionKind::positive) {
      if (age <= bounds.positive) {
        ++counts.positive;
      }
    } else if (age <= bounds.negative) {
      ++counts.negative;
    }
  }
  return counts;
}

std::int64_t net_activity(std::int64_t qualified_pos, std::int64_t qualified_neg) {
  return qualified_pos - qualified_neg;
}

TrustReport assess_trust(const ActivityLog& log, Timestamp curr, const WindowConfig& config,
                         const fuzzy::FuzzyConfig& fuzzy_config) {
  QualifiedCounts counts = qualify_actions(log, curr, config);
  TrustReport report;
  report.uid = log.uid();
  report.qualified_pos = counts.positive;
  report.qualified_neg = counts.negative;
  report.net_activity = net_activity(counts.positive, counts.negative);
  report.trust_degree = fuzzy::trust_score(fuzzy_config, static_cast<double>(counts.positive),
                                           static_cast<double>(counts.negative));
  return report;
}

void AccessPolicy::add_tier(double min_trust, std::string label) {
  Tier tier{min_trust, std::move(label)};
  auto pos = std::find_if(tiers_.begin(), tiers_.end(),
                          [&](const Tier& t) { return t.min_trust < tier.min_trust; });
  tiers_.insert(pos, std::move(tier));
}

std::optional<std::string> AccessPolicy::tier_for(double trust_degree) const {
  for (const Tier& tier : tiers_) {
    if (trust_degree >= tier.min_trust) {
      return tier.label;
    }
  }
  return std::nullopt;
}

}  // namespace edgetrust

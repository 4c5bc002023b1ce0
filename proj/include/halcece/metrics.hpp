#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halcece/object_edits.hpp"
#include "halcece/role_edits.hpp"
#include "halcece/taxonomy.hpp"

namespace halcece {

struct ObjectStats {
  std::size_t n_objects = 0;   // |S|
  std::size_t n_targets = 0;   // |T|
  std::size_t n_ancestors = 0; // hypernym closure size summed over S
  std::size_t correct = 0, d = 0, r = 0, o = 0, u = 0, i = 0;
  std::size_t hal = 0; // d + r + o
  std::optional<double> hal_rate;       // hal / |S|, absent when |S| = 0
  std::optional<double> granularity;    // 1 - i / |T|, absent when |T| = 0
  std::optional<double> u_rate;         // u / |S|
  std::optional<double> mean_wu_palmer; // over R-classified pairs only
  std::optional<double> chair;          // per-instance CHAIR, filled by caller
};

struct RoleStats {
  std::size_t n_roles = 0;   // caption triples
  std::size_t n_targets = 0; // image triples
  std::size_t correct = 0, d = 0, r = 0, i = 0;
  std::size_t hal = 0; // d + r; no over/under split at role level
  std::optional<double> hal_rate;
  std::optional<double> granularity;
  double ged_cost = 0.0;
};

struct LinguisticStats {
  double rouge1 = 0, rouge2 = 0, rouge_l = 0, rouge_lsum = 0;
  double bleu = 0, google_bleu = 0;
};

struct InstanceReport {
  std::string id;
  ObjectStats objects;
  std::optional<RoleStats> roles;           // present when roles were evaluated
  std::optional<LinguisticStats> linguistic; // present iff references supplied
  std::size_t unmapped_caption = 0, unmapped_image = 0;
  std::size_t dropped_triples = 0;
};

ObjectStats object_report(const Taxonomy& t, const EditPlan& plan,
                          const std::vector<SynsetIndex>& S,
                          const std::vector<SynsetIndex>& T);

RoleStats role_report(const RolePlan& plan, const SceneGraph& source,
                      const SceneGraph& target);

// Source positions of hallucinated objects: the D, R, and O edits.
std::vector<std::size_t> hallucinated_sources(const EditPlan& plan);

// |hallucinated| / |predicted|; absent when nothing was predicted. Indices
// must be in range and unique.
std::optional<double> chair_i(const std::vector<std::string>& predicted,
                              const std::vector<std::size_t>& hallucinated);

// Share of instances with at least one hallucinated object; absent on an
// empty list.
std::optional<double> chair_s(const std::vector<InstanceReport>& reports);

// A mean over instances; `excluded` counts instances where the value was
// absent and therefore skipped.
struct MeanValue {
  std::optional<double> mean;
  std::size_t excluded = 0;
};

struct ObjectAggregate {
  double objects = 0, targets = 0, ancestors = 0;
  double correct = 0, d = 0, r = 0, o = 0, u = 0, i = 0, hal = 0;
  MeanValue hal_rate, granularity, u_rate, mean_wu_palmer, chair;
  // Per-phenomenon rate means (d/|S| etc. per instance), same exclusion
  // rule as hal_rate.
  MeanValue d_rate, r_rate, o_rate;
};

struct RoleAggregate {
  std::size_t instances = 0; // how many reports carried role stats
  double roles = 0, targets = 0, correct = 0, d = 0, r = 0, i = 0, hal = 0;
  double ged_cost = 0;
  MeanValue hal_rate, granularity, d_rate, r_rate;
};

struct LinguisticAggregate {
  std::size_t instances = 0;
  double rouge1 = 0, rouge2 = 0, rouge_l = 0, rouge_lsum = 0;
  double bleu = 0, google_bleu = 0;
};

struct AggregateReport {
  std::size_t n_instances = 0;
  ObjectAggregate objects;
  std::optional<RoleAggregate> roles;
  std::optional<LinguisticAggregate> linguistic;
  std::optional<double> chair_s;
  std::size_t unmapped_caption = 0, unmapped_image = 0, dropped_triples = 0;
};

// Mean-of-per-instance-ratios aggregation (never ratio of mean counts, which
// is a different number), with compensated summation so folding order cannot
// leak into the output. Verifies the per-instance identities (hal = d+r+o,
// rate * denominator = numerator) and throws std::logic_error on violation;
// throws std::invalid_argument on an empty stream.
AggregateReport aggregate(const std::vector<InstanceReport>& reports);

// Pearson correlation over metric columns aligned by instance. Entries are
// absent when fewer than 3 complete pairs exist or either column is constant
// on the complete rows; the diagonal is exactly 1 where defined.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> entries;
};

using MetricColumn = std::vector<std::optional<double>>;

CorrelationMatrix correlate(const std::vector<std::string>& labels,
                            const std::vector<MetricColumn>& columns);

}  // namespace halcece

#include "halcece/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace halcece {

namespace {

struct KahanSum {
  double sum = 0.0, compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
};

// Mean helper for rate metrics with absent values.
struct RateFold {
  KahanSum sum;
  std::size_t included = 0, excluded = 0;

  void add(const std::optional<double>& value) {
    if (value) {
      sum.add(*value);
      ++included;
    } else {
      ++excluded;
    }
  }
  MeanValue finish() const {
    MeanValue out;
    out.excluded = excluded;
    if (included > 0) out.mean = sum.sum / included;
    return out;
  }
};

void check_instance_identities(const InstanceReport& report) {
  const auto& ob = report.objects;
  auto fail = [&](const char* what) {
    throw std::logic_error("metric identity violated on instance '" +
                           report.id + "': " + what);
  };
  if (ob.hal != ob.d + ob.r + ob.o) fail("hal != d + r + o");
  if (ob.n_objects != ob.correct + ob.d + ob.r + ob.o + ob.u)
    fail("object counts do not partition |S|");
  if (ob.hal_rate.has_value() != (ob.n_objects > 0)) fail("hal_rate presence");
  if (ob.hal_rate &&
      *ob.hal_rate != static_cast<double>(ob.hal) / ob.n_objects)
    fail("hal_rate * |S| != hal");
  if (ob.granularity.has_value() != (ob.n_targets > 0))
    fail("granularity presence");
  if (ob.granularity &&
      *ob.granularity != 1.0 - static_cast<double>(ob.i) / ob.n_targets)
    fail("granularity != 1 - i/|T|");
  if (report.roles) {
    const auto& ro = *report.roles;
    if (ro.hal != ro.d + ro.r) fail("role hal != d + r");
    if (ro.hal_rate.has_value() != (ro.n_roles > 0))
      fail("role hal_rate presence");
    if (ro.hal_rate &&
        *ro.hal_rate != static_cast<double>(ro.hal) / ro.n_roles)
      fail("role hal_rate * |S| != hal");
    if (ro.granularity &&
        *ro.granularity != 1.0 - static_cast<double>(ro.i) / ro.n_targets)
      fail("role granularity != 1 - i/|T|");
  }
}

std::optional<double> pearson(const MetricColumn& x, const MetricColumn& y) {
  std::vector<std::pair<double, double>> rows;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] && y[i]) rows.emplace_back(*x[i], *y[i]);
  if (rows.size() < 3) return std::nullopt;

  KahanSum mx, my;
  for (const auto& [a, b] : rows) {
    mx.add(a);
    my.add(b);
  }
  const double mean_x = mx.sum / rows.size();
  const double mean_y = my.sum / rows.size();
  KahanSum sxx, syy, sxy;
  for (const auto& [a, b] : rows) {
    sxx.add((a - mean_x) * (a - mean_x));
    syy.add((b - mean_y) * (b - mean_y));
    sxy.add((a - mean_x) * (b - mean_y));
  }
  if (sxx.sum <= 0.0 || syy.sum <= 0.0) return std::nullopt; // constant column
  return std::clamp(sxy.sum / std::sqrt(sxx.sum * syy.sum), -1.0, 1.0);
}

} // namespace

ObjectStats object_report(const Taxonomy& t, const EditPlan& plan,
                          const std::vector<SynsetIndex>& S,
                          const std::vector<SynsetIndex>& T) {
  ObjectStats stats;
  stats.n_objects = S.size();
  stats.n_targets = T.size();
  for (SynsetIndex s : S) stats.n_ancestors += t.ancestor_count(s);
  stats.correct = plan.count(Phenomenon::Correct);
  stats.d = plan.count(Phenomenon::D);
  stats.r = plan.count(Phenomenon::R);
  stats.o = plan.count(Phenomenon::O);
  stats.u = plan.count(Phenomenon::U);
  stats.i = plan.count(Phenomenon::I);
  stats.hal = stats.d + stats.r + stats.o;
  if (stats.n_objects > 0) {
    stats.hal_rate = static_cast<double>(stats.hal) / stats.n_objects;
    stats.u_rate = static_cast<double>(stats.u) / stats.n_objects;
  }
  if (stats.n_targets > 0)
    stats.granularity = 1.0 - static_cast<double>(stats.i) / stats.n_targets;

  KahanSum wup;
  std::size_t r_pairs = 0;
  for (const auto& e : plan.edits)
    if (e.phenomenon == Phenomenon::R) {
      wup.add(t.wu_palmer(*e.source, *e.target));
      ++r_pairs;
    }
  if (r_pairs > 0) stats.mean_wu_palmer = wup.sum / r_pairs;
  return stats;
}

RoleStats role_report(const RolePlan& plan, const SceneGraph& source,
                      const SceneGraph& target) {
  RoleStats stats;
  stats.n_roles = source.edges.size();
  stats.n_targets = target.edges.size();
  stats.correct = plan.correct_roles.size();
  stats.d = plan.count(EditKind::Delete);
  stats.r = plan.count(EditKind::Replace);
  stats.i = plan.count(EditKind::Insert);
  stats.hal = stats.d + stats.r;
  if (stats.n_roles > 0)
    stats.hal_rate = static_cast<double>(stats.hal) / stats.n_roles;
  if (stats.n_targets > 0)
    stats.granularity = 1.0 - static_cast<double>(stats.i) / stats.n_targets;
  stats.ged_cost = plan.ged_cost;
  return stats;
}

std::vector<std::size_t> hallucinated_sources(const EditPlan& plan) {
  std::vector<std::size_t> out;
  for (const auto& e : plan.edits)
    if (e.phenomenon == Phenomenon::D || e.phenomenon == Phenomenon::R ||
        e.phenomenon == Phenomenon::O)
      out.push_back(*e.source_index);
  return out;
}

std::optional<double> chair_i(const std::vector<std::string>& predicted,
                              const std::vector<std::size_t>& hallucinated) {
  if (predicted.empty()) return std::nullopt;
  std::set<std::size_t> unique(hallucinated.begin(), hallucinated.end());
  if (unique.size() != hallucinated.size())
    throw std::invalid_argument("chair_i: duplicate hallucinated index");
  for (std::size_t idx : unique)
    if (idx >= predicted.size())
      throw std::invalid_argument("chair_i: index out of range");
  return static_cast<double>(hallucinated.size()) / predicted.size();
}

std::optional<double> chair_s(const std::vector<InstanceReport>& reports) {
  if (reports.empty()) return std::nullopt;
  std::size_t with_hallucination = 0;
  for (const auto& r : reports)
    if (r.objects.hal > 0) ++with_hallucination;
  return static_cast<double>(with_hallucination) / reports.size();
}

AggregateReport aggregate(const std::vector<InstanceReport>& reports) {
  if (reports.empty())
    throw std::invalid_argument("aggregate: no instance reports");

  AggregateReport agg;
  agg.n_instances = reports.size();

  KahanSum objects, targets, ancestors, correct, d, r, o, u, ins, hal;
  RateFold hal_rate, granularity, u_rate, mean_wup, chair;
  RateFold d_rate, r_rate, o_rate;
  RoleAggregate role_agg;
  KahanSum roles, rtargets, rcorrect, rd, rr, ri, rhal, rged;
  RateFold role_hal_rate, role_granularity, role_d_rate, role_r_rate;
  LinguisticAggregate ling_agg;
  KahanSum rouge1, rouge2, rouge_l, rouge_lsum, bleu_sum, gleu;

  for (const auto& report : reports) {
    check_instance_identities(report);
    const auto& ob = report.objects;
    objects.add(ob.n_objects);
    targets.add(ob.n_targets);
    ancestors.add(ob.n_ancestors);
    correct.add(ob.correct);
    d.add(ob.d);
    r.add(ob.r);
    o.add(ob.o);
    u.add(ob.u);
    ins.add(ob.i);
    hal.add(ob.hal);
    hal_rate.add(ob.hal_rate);
    granularity.add(ob.granularity);
    u_rate.add(ob.u_rate);
    mean_wup.add(ob.mean_wu_palmer);
    chair.add(ob.chair);
    auto per_object = [&](std::size_t count) -> std::optional<double> {
      if (ob.n_objects == 0) return std::nullopt;
      return static_cast<double>(count) / ob.n_objects;
    };
    d_rate.add(per_object(ob.d));
    r_rate.add(per_object(ob.r));
    o_rate.add(per_object(ob.o));
    agg.unmapped_caption += report.unmapped_caption;
    agg.unmapped_image += report.unmapped_image;
    agg.dropped_triples += report.dropped_triples;

    if (report.roles) {
      const auto& ro = *report.roles;
      ++role_agg.instances;
      roles.add(ro.n_roles);
      rtargets.add(ro.n_targets);
      rcorrect.add(ro.correct);
      rd.add(ro.d);
      rr.add(ro.r);
      ri.add(ro.i);
      rhal.add(ro.hal);
      rged.add(ro.ged_cost);
      role_hal_rate.add(ro.hal_rate);
      role_granularity.add(ro.granularity);
      auto per_role = [&](std::size_t count) -> std::optional<double> {
        if (ro.n_roles == 0) return std::nullopt;
        return static_cast<double>(count) / ro.n_roles;
      };
      role_d_rate.add(per_role(ro.d));
      role_r_rate.add(per_role(ro.r));
    }
    if (report.linguistic) {
      const auto& li = *report.linguistic;
      ++ling_agg.instances;
      rouge1.add(li.rouge1);
      rouge2.add(li.rouge2);
      rouge_l.add(li.rouge_l);
      rouge_lsum.add(li.rouge_lsum);
      bleu_sum.add(li.bleu);
      gleu.add(li.google_bleu);
    }
  }

  const double n = static_cast<double>(agg.n_instances);
  agg.objects.objects = objects.sum / n;
  agg.objects.targets = targets.sum / n;
  agg.objects.ancestors = ancestors.sum / n;
  agg.objects.correct = correct.sum / n;
  agg.objects.d = d.sum / n;
  agg.objects.r = r.sum / n;
  agg.objects.o = o.sum / n;
  agg.objects.u = u.sum / n;
  agg.objects.i = ins.sum / n;
  agg.objects.hal = hal.sum / n;
  agg.objects.hal_rate = hal_rate.finish();
  agg.objects.granularity = granularity.finish();
  agg.objects.u_rate = u_rate.finish();
  agg.objects.mean_wu_palmer = mean_wup.finish();
  agg.objects.chair = chair.finish();
  agg.objects.d_rate = d_rate.finish();
  agg.objects.r_rate = r_rate.finish();
  agg.objects.o_rate = o_rate.finish();
  agg.chair_s = chair_s(reports);

  if (role_agg.instances > 0) {
    const double rn = static_cast<double>(role_agg.instances);
    role_agg.roles = roles.sum / rn;
    role_agg.targets = rtargets.sum / rn;
    role_agg.correct = rcorrect.sum / rn;
    role_agg.d = rd.sum / rn;
    role_agg.r = rr.sum / rn;
    role_agg.i = ri.sum / rn;
    role_agg.hal = rhal.sum / rn;
    role_agg.ged_cost = rged.sum / rn;
    role_agg.hal_rate = role_hal_rate.finish();
    role_agg.granularity = role_granularity.finish();
    role_agg.d_rate = role_d_rate.finish();
    role_agg.r_rate = role_r_rate.finish();
    agg.roles = role_agg;
  }
  if (ling_agg.instances > 0) {
    const double ln = static_cast<double>(ling_agg.instances);
    ling_agg.rouge1 = rouge1.sum / ln;
    ling_agg.rouge2 = rouge2.sum / ln;
    ling_agg.rouge_l = rouge_l.sum / ln;
    ling_agg.rouge_lsum = rouge_lsum.sum / ln;
    ling_agg.bleu = bleu_sum.sum / ln;
    ling_agg.google_bleu = gleu.sum / ln;
    agg.linguistic = ling_agg;
  }
  return agg;
}

CorrelationMatrix correlate(const std::vector<std::string>& labels,
                            const std::vector<MetricColumn>& columns) {
  if (labels.size() != columns.size())
    throw std::invalid_argument("correlate: one label per column required");
  for (const auto& c : columns)
    if (c.size() != columns.front().size())
      throw std::invalid_argument("correlate: ragged columns");

  const std::size_t k = labels.size();
  CorrelationMatrix out;
  out.labels = labels;
  out.entries.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t a = 0; a < k; ++a) {
    // The diagonal is exact by definition, not a computed quotient, but only
    // where the column correlates with itself at all.
    out.entries[a][a] =
        pearson(columns[a], columns[a]).has_value()
            ? std::optional<double>(1.0)
            : std::nullopt;
    for (std::size_t b = a + 1; b < k; ++b)
      out.entries[a][b] = out.entries[b][a] = pearson(columns[a], columns[b]);
  }
  return out;
}

}  // namespace halcece

#include "halcece/runner.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "halcece/object_edits.hpp"
#include "halcece/report_io.hpp"
#include "halcece/text_metrics.hpp"

namespace halcece {
namespace {

struct Evaluated {
  MappedInstance mapped;
  EditPlan plan;
  std::optional<RolePlan> role_plan;
  InstanceReport report;
};

Evaluated evaluate(const Taxonomy& t, const InstanceRecord& record,
                   const Overrides& overrides, const RunOptions& options) {
  Evaluated ev;
  ev.mapped = map_instance(t, record, overrides, options.dedupe);
  ev.plan = object_edit_plan(t, ev.mapped.S, ev.mapped.T);

  InstanceReport report;
  report.id = record.id;
  report.objects = object_report(t, ev.plan, ev.mapped.S, ev.mapped.T);
  std::vector<std::string> predicted;
  predicted.reserve(ev.mapped.G_S.nodes.size());
  for (const auto& node : ev.mapped.G_S.nodes)
    predicted.push_back(node.surface);
  report.objects.chair = chair_i(predicted, hallucinated_sources(ev.plan));

  if (options.mode != EvalMode::Objects) {
    ev.role_plan =
        approx_ged(t, ev.mapped.G_S, ev.mapped.G_T, options.role_config);
    report.roles = role_report(*ev.role_plan, ev.mapped.G_S, ev.mapped.G_T);
  }
  if (record.caption_text && !record.reference_captions.empty()) {
    LinguisticStats li;
    li.rouge1 = rouge_n(*record.caption_text, record.reference_captions, 1);
    li.rouge2 = rouge_n(*record.caption_text, record.reference_captions, 2);
    li.rouge_l = rouge_l(*record.caption_text, record.reference_captions);
    li.rouge_lsum =
        rouge_lsum(*record.caption_text, record.reference_captions);
    li.bleu = bleu(*record.caption_text, record.reference_captions);
    li.google_bleu =
        google_bleu(*record.caption_text, record.reference_captions);
    report.linguistic = li;
  }
  for (const auto& miss : ev.mapped.unmapped) {
    if (miss.side == Side::Caption)
      ++report.unmapped_caption;
    else
      ++report.unmapped_image;
  }
  report.dropped_triples = ev.mapped.dropped_triples.size();
  ev.report = std::move(report);
  return ev;
}

std::string surface_of(const SceneGraph& g, std::size_t node) {
  return g.nodes[node].surface;
}

std::string triple_str(const TripleText& triple) {
  return "'" + triple.head + " " + triple.role + " " + triple.tail + "'";
}

}  // namespace

std::optional<EvalMode> parse_mode(std::string_view name) {
  if (name == "objects") return EvalMode::Objects;
  if (name == "roles") return EvalMode::Roles;
  if (name == "both") return EvalMode::Both;
  return std::nullopt;
}

const char* to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::Objects: return "objects";
    case EvalMode::Roles: return "roles";
    case EvalMode::Both: return "both";
  }
  return "?";
}

RunResult run_dataset(const Taxonomy& t,
                      const std::vector<InstanceRecord>& records,
                      const Overrides& overrides, const RunOptions& options) {
  std::vector<std::optional<InstanceReport>> slots(records.size());
  std::vector<std::string> failures(records.size());

  std::size_t n_threads =
      options.threads > 0 ? options.threads
                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<std::size_t>(n_threads, std::max<std::size_t>(records.size(), 1));

  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= records.size()) return;
      try {
        slots[i] = evaluate(t, records[i], overrides, options).report;
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(work);
  for (auto& thread : pool) thread.join();

  RunResult out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (slots[i]) {
      out.reports.push_back(std::move(*slots[i]));
      continue;
    }
    const std::string message =
        "instance '" + records[i].id + "': " + failures[i];
    if (options.strict) throw std::runtime_error(message);
    out.warnings.push_back("skipping " + message);
  }
  std::stable_sort(out.reports.begin(), out.reports.end(),
                   [](const InstanceReport& a, const InstanceReport& b) {
                     return a.id < b.id;
                   });
  return out;
}

std::string explain_instance(const Taxonomy& t, const InstanceRecord& record,
                             const Overrides& overrides,
                             const RunOptions& options) {
  const Evaluated ev = evaluate(t, record, overrides, options);
  const auto& gs = ev.mapped.G_S;
  const auto& gt = ev.mapped.G_T;

  std::string out = "instance '" + record.id + "'\n";
  auto list_side = [&](const char* label, const SceneGraph& g) {
    out += label;
    if (g.nodes.empty()) out += " (empty)";
    for (const auto& node : g.nodes) out += " '" + node.surface + "'";
    out += "\n";
  };
  list_side("caption objects (S):", gs);
  list_side("image objects (T):", gt);

  out += "object edits:\n";
  for (const auto& e : ev.plan.edits) {
    out += "  ";
    out += to_string(e.phenomenon);
    if (e.kind == EditKind::Delete) {
      out += " delete '" + surface_of(gs, *e.source_index) + "'";
    } else if (e.phenomenon == Phenomenon::Correct) {
      out += " keep '" + surface_of(gs, *e.source_index) + "' = '" +
             surface_of(gt, *e.target_index) + "'";
    } else {
      out += " replace '" + surface_of(gs, *e.source_index) + "' -> '" +
             surface_of(gt, *e.target_index) + "'";
    }
    out += " (cost " + format_double(e.cost);
    if (e.kind == EditKind::Replace && e.phenomenon != Phenomenon::Correct)
      out += ", wu-palmer " + format_double(t.wu_palmer(*e.source, *e.target));
    out += ")\n";
  }
  for (const auto& e : ev.plan.insert_suggestions)
    out += "  I insert '" + surface_of(gt, *e.target_index) + "' (cost " +
           format_double(e.cost) + ")\n";
  out += std::to_string(ev.report.objects.hal) + " hallucinated of " +
         std::to_string(ev.report.objects.n_objects) + " objects\n";

  if (ev.role_plan) {
    const auto& plan = *ev.role_plan;
    out += "roles (" + std::to_string(gs.edges.size()) + " caption / " +
           std::to_string(gt.edges.size()) + " image triples):\n";
    for (const auto& [se, te] : plan.correct_roles) {
      (void)te;
      out += "  correct " + triple_str(render(gs, gs.edges[se])) + "\n";
    }
    for (const auto& e : plan.role_edits) {
      out += "  ";
      out += to_string(e.kind);
      if (e.source_edge)
        out += " " + triple_str(render(gs, gs.edges[*e.source_edge]));
      if (e.source_edge && e.target_edge) out += " ->";
      if (e.target_edge)
        out += " " + triple_str(render(gt, gt.edges[*e.target_edge]));
      out += " (";
      out += to_string(e.cause);
      out += ", cost " + format_double(e.cost) + ")\n";
    }
    out += "role ged cost " + format_double(plan.ged_cost) + "\n";
  }

  if (!ev.mapped.unmapped.empty()) {
    out += "unmapped:";
    for (const auto& miss : ev.mapped.unmapped)
      out += std::string(" '") + miss.surface + "' (" + to_string(miss.side) +
             ")";
    out += "\n";
  }
  if (!ev.mapped.dropped_triples.empty())
    out += "dropped triples: " +
           std::to_string(ev.mapped.dropped_triples.size()) + "\n";
  return out;
}

}  // namespace halcece

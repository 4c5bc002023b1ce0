#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "halcece/ingestion.hpp"
#include "halcece/report_io.hpp"
#include "halcece/runner.hpp"

namespace {

using namespace halcece;

struct CliConfig {
  std::string wordnet_dir;
  std::string dataset;
  std::string overrides_path;
  std::string out_path;
  std::string mode_name = "both";
  std::string format_name = "csv";
  std::string explain_id;
  std::string taxonomy_query;
  bool dedupe = false;
  bool strict = false;
  bool edge_augmented = true;
};

int fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

std::string synset_label(const Taxonomy& t, SynsetIndex s) {
  const auto& syn = t.synset(s);
  std::string label = syn.id;
  if (!syn.lemmas.empty()) label += " '" + syn.lemmas.front() + "'";
  return label;
}

int cmd_taxonomy(const Taxonomy& t, const std::string& query) {
  const auto comma = query.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= query.size())
    return fail("--taxonomy expects LEMMA1,LEMMA2");
  const std::string first = query.substr(0, comma);
  const std::string second = query.substr(comma + 1);

  SynsetIndex mapped[2] = {kNoSynset, kNoSynset};
  const std::string* surfaces[2] = {&first, &second};
  for (int i = 0; i < 2; ++i) {
    const auto synset = t.map_lemma(*surfaces[i], Pos::Noun);
    if (!synset) {
      std::cerr << "error: unmapped lemma '" << *surfaces[i] << "'\n";
      return 1;
    }
    mapped[i] = *synset;
    std::cout << "'" << *surfaces[i] << "' -> " << synset_label(t, *synset)
              << " (depth " << t.depth(*synset) << ")\n";
  }

  const auto path = t.shortest_path(mapped[0], mapped[1]);
  std::cout << "path length: "
            << format_double(t.path_cost(mapped[0], mapped[1]).value) << "\n";
  std::cout << "path:";
  for (const auto hop : path) std::cout << " " << synset_label(t, hop);
  std::cout << "\n";

  const SynsetIndex lca = t.lca(mapped[0], mapped[1]);
  std::cout << "lca: " << synset_label(t, lca) << " (depth " << t.depth(lca)
            << ")\n";
  std::cout << "wu-palmer: "
            << format_double(t.wu_palmer(mapped[0], mapped[1])) << "\n";
  if (mapped[0] != mapped[1] && lca == mapped[1])
    std::cout << "note: '" << first << "' -> '" << second
              << "' walks up the hierarchy (over-specification, O)\n";
  else if (mapped[0] != mapped[1] && lca == mapped[0])
    std::cout << "note: '" << first << "' -> '" << second
              << "' walks down the hierarchy (under-specification, U)\n";
  return 0;
}

// Dataset loading shared by evaluate and explain: in strict mode any bad
// record aborts; otherwise bad records become stderr warnings.
int load_records(const CliConfig& config, std::vector<InstanceRecord>& records) {
  DatasetReadResult data = read_dataset(config.dataset);
  if (!data.errors.empty()) {
    for (const auto& error : data.errors)
      std::cerr << (config.strict ? "error: " : "warning: ") << config.dataset
                << ":" << error.line << ": " << error.message << "\n";
    if (config.strict) return 2;
  }
  records = std::move(data.records);
  return 0;
}

RunOptions run_options(const CliConfig& config, EvalMode mode) {
  RunOptions options;
  options.mode = mode;
  options.dedupe = config.dedupe;
  options.strict = config.strict;
  options.role_config.edge_augmented = config.edge_augmented;
  return options;
}

int cmd_explain(const Taxonomy& t, const CliConfig& config,
                const Overrides& overrides, EvalMode mode) {
  std::vector<InstanceRecord> records;
  if (const int code = load_records(config, records); code != 0) return code;
  for (const auto& record : records) {
    if (record.id != config.explain_id) continue;
    std::cout << explain_instance(t, record, overrides,
                                  run_options(config, mode));
    return 0;
  }
  return fail("no instance with id '" + config.explain_id + "'");
}

int cmd_evaluate(const Taxonomy& t, const CliConfig& config,
                 const Overrides& overrides, EvalMode mode,
                 ReportFormat format) {
  std::vector<InstanceRecord> records;
  if (const int code = load_records(config, records); code != 0) return code;

  const RunResult result =
      run_dataset(t, records, overrides, run_options(config, mode));
  for (const auto& warning : result.warnings)
    std::cerr << "warning: " << warning << "\n";
  if (result.reports.empty())
    return fail("no evaluable instances in " + config.dataset);

  const AggregateReport agg = aggregate(result.reports);
  const std::string aggregate_path = config.out_path + ".aggregate";
  write_file_atomic(config.out_path,
                    render_instance_reports(result.reports, format));
  write_file_atomic(aggregate_path, render_aggregate_row(agg, format));

  std::cout << "wrote " << result.reports.size() << " instance reports to "
            << config.out_path << ", aggregate to " << aggregate_path
            << "\n";
  std::cout << render_aggregate_text(agg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig config;
  CLI::App app{"Caption-vs-image hallucination evaluation over a concept "
               "hierarchy"};
  app.add_option("--wordnet", config.wordnet_dir,
                 "WordNet database directory (default: $HALCECE_WORDNET_DIR)");
  app.add_option("--dataset", config.dataset, "JSON-lines dataset file");
  app.add_option("--mode", config.mode_name, "objects|roles|both")
      ->capture_default_str();
  app.add_flag("--dedupe", config.dedupe,
               "collapse repeated lemmas on each side");
  app.add_flag("--strict", config.strict,
               "treat any record error as fatal");
  app.add_option("--format", config.format_name, "csv|json-lines")
      ->capture_default_str();
  app.add_option("--out", config.out_path,
                 "per-instance report file; the aggregate row lands at "
                 "PATH.aggregate");
  app.add_option("--overrides", config.overrides_path,
                 "lemma<TAB>synset_id override file");
  app.add_option("--edge-augmented-ged", config.edge_augmented,
                 "blend incident-edge costs into the node assignment")
      ->capture_default_str();
  app.add_option("--explain", config.explain_id,
                 "print the edit trace for one instance id");
  app.add_option("--taxonomy", config.taxonomy_query,
                 "LEMMA1,LEMMA2: print path, LCA and similarity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (config.wordnet_dir.empty()) {
      const char* env = std::getenv("HALCECE_WORDNET_DIR");
      if (env != nullptr) config.wordnet_dir = env;
    }
    if (config.wordnet_dir.empty())
      return fail("no WordNet directory: pass --wordnet or set "
                  "HALCECE_WORDNET_DIR");

    const auto mode = parse_mode(config.mode_name);
    if (!mode) return fail("unknown --mode '" + config.mode_name + "'");
    const auto format = parse_format(config.format_name);
    if (!format) return fail("unknown --format '" + config.format_name + "'");

    const Taxonomy t =
        Taxonomy::load(config.wordnet_dir, {Pos::Noun, Pos::Verb});

    if (!config.taxonomy_query.empty())
      return cmd_taxonomy(t, config.taxonomy_query);

    if (config.dataset.empty())
      return fail("--dataset is required");
    Overrides overrides;
    if (!config.overrides_path.empty()) {
      overrides = read_overrides(config.overrides_path);
      validate_overrides(t, overrides);
    }

    if (!config.explain_id.empty())
      return cmd_explain(t, config, overrides, *mode);

    if (config.out_path.empty())
      return fail("--out is required");
    return cmd_evaluate(t, config, overrides, *mode, *format);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

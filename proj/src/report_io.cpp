#include "halcece/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace halcece {
namespace {

using nlohmann::json;

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"' && cell.empty()) {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(cells[i]);
  }
  out += '\n';
  return out;
}

std::string opt_cell(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::size_t parse_size(const std::string& cell, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw std::runtime_error(std::string("bad count for ") + what + ": '" +
                             cell + "'");
  return value;
}

std::optional<double> parse_opt(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return parse_double(cell);
}

// Column names for the per-instance table, in emission order.
const std::vector<std::string> kObjectColumns = {
    "id",      "objects",     "targets", "ancestors",   "correct",
    "d",       "r",           "o",       "u",           "i",
    "hal",     "hal_rate",    "granularity", "u_rate",  "wu_palmer_r",
    "chair"};
const std::vector<std::string> kRoleColumns = {
    "roles",    "role_targets", "role_correct",  "role_d",
    "role_r",   "role_i",       "role_hal",      "role_hal_rate",
    "role_granularity", "role_ged"};
const std::vector<std::string> kLinguisticColumns = {
    "rouge1", "rouge2", "rouge_l", "rouge_lsum", "bleu", "google_bleu"};
const std::vector<std::string> kTailColumns = {
    "unmapped_caption", "unmapped_image", "dropped_triples"};

std::string instance_csv(const std::vector<InstanceReport>& reports) {
  bool with_roles = false, with_linguistic = false;
  for (const auto& r : reports) {
    with_roles = with_roles || r.roles.has_value();
    with_linguistic = with_linguistic || r.linguistic.has_value();
  }

  std::vector<std::string> header = kObjectColumns;
  if (with_roles)
    header.insert(header.end(), kRoleColumns.begin(), kRoleColumns.end());
  if (with_linguistic)
    header.insert(header.end(), kLinguisticColumns.begin(),
                  kLinguisticColumns.end());
  header.insert(header.end(), kTailColumns.begin(), kTailColumns.end());

  std::string out = join(header);
  for (const auto& r : reports) {
    const auto& ob = r.objects;
    std::vector<std::string> row = {r.id,
                                    std::to_string(ob.n_objects),
                                    std::to_string(ob.n_targets),
                                    std::to_string(ob.n_ancestors),
                                    std::to_string(ob.correct),
                                    std::to_string(ob.d),
                                    std::to_string(ob.r),
                                    std::to_string(ob.o),
                                    std::to_string(ob.u),
                                    std::to_string(ob.i),
                                    std::to_string(ob.hal),
                                    opt_cell(ob.hal_rate),
                                    opt_cell(ob.granularity),
                                    opt_cell(ob.u_rate),
                                    opt_cell(ob.mean_wu_palmer),
                                    opt_cell(ob.chair)};
    if (with_roles) {
      if (r.roles) {
        const auto& ro = *r.roles;
        row.insert(row.end(), {std::to_string(ro.n_roles),
                               std::to_string(ro.n_targets),
                               std::to_string(ro.correct),
                               std::to_string(ro.d),
                               std::to_string(ro.r),
                               std::to_string(ro.i),
                               std::to_string(ro.hal),
                               opt_cell(ro.hal_rate),
                               opt_cell(ro.granularity),
                               format_double(ro.ged_cost)});
      } else {
        row.insert(row.end(), kRoleColumns.size(), std::string());
      }
    }
    if (with_linguistic) {
      if (r.linguistic) {
        const auto& li = *r.linguistic;
        row.insert(row.end(),
                   {format_double(li.rouge1), format_double(li.rouge2),
                    format_double(li.rouge_l), format_double(li.rouge_lsum),
                    format_double(li.bleu), format_double(li.google_bleu)});
      } else {
        row.insert(row.end(), kLinguisticColumns.size(), std::string());
      }
    }
    row.insert(row.end(), {std::to_string(r.unmapped_caption),
                           std::to_string(r.unmapped_image),
                           std::to_string(r.dropped_triples)});
    out += join(row);
  }
  return out;
}

std::vector<InstanceReport> instance_from_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty report file");
  const auto header = split_csv_line(line);
  const bool with_roles =
      std::find(header.begin(), header.end(), "roles") != header.end();
  const bool with_linguistic =
      std::find(header.begin(), header.end(), "rouge1") != header.end();

  std::vector<std::string> expected = kObjectColumns;
  if (with_roles)
    expected.insert(expected.end(), kRoleColumns.begin(), kRoleColumns.end());
  if (with_linguistic)
    expected.insert(expected.end(), kLinguisticColumns.begin(),
                    kLinguisticColumns.end());
  expected.insert(expected.end(), kTailColumns.begin(), kTailColumns.end());
  if (header != expected)
    throw std::runtime_error("unexpected report header");

  std::vector<InstanceReport> reports;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected.size())
      throw std::runtime_error("report row width mismatch");
    std::size_t at = 0;
    auto next = [&]() -> const std::string& { return cells[at++]; };

    InstanceReport r;
    r.id = next();
    auto& ob = r.objects;
    ob.n_objects = parse_size(next(), "objects");
    ob.n_targets = parse_size(next(), "targets");
    ob.n_ancestors = parse_size(next(), "ancestors");
    ob.correct = parse_size(next(), "correct");
    ob.d = parse_size(next(), "d");
    ob.r = parse_size(next(), "r");
    ob.o = parse_size(next(), "o");
    ob.u = parse_size(next(), "u");
    ob.i = parse_size(next(), "i");
    ob.hal = parse_size(next(), "hal");
    ob.hal_rate = parse_opt(next());
    ob.granularity = parse_opt(next());
    ob.u_rate = parse_opt(next());
    ob.mean_wu_palmer = parse_opt(next());
    ob.chair = parse_opt(next());
    if (with_roles) {
      // A report without role stats leaves the whole group empty; the
      // role count cell is never empty otherwise.
      if (cells[at].empty()) {
        at += kRoleColumns.size();
      } else {
        RoleStats ro;
        ro.n_roles = parse_size(next(), "roles");
        ro.n_targets = parse_size(next(), "role_targets");
        ro.correct = parse_size(next(), "role_correct");
        ro.d = parse_size(next(), "role_d");
        ro.r = parse_size(next(), "role_r");
        ro.i = parse_size(next(), "role_i");
        ro.hal = parse_size(next(), "role_hal");
        ro.hal_rate = parse_opt(next());
        ro.granularity = parse_opt(next());
        ro.ged_cost = parse_double(next());
        r.roles = ro;
      }
    }
    if (with_linguistic) {
      if (cells[at].empty()) {
        at += kLinguisticColumns.size();
      } else {
        LinguisticStats li;
        li.rouge1 = parse_double(next());
        li.rouge2 = parse_double(next());
        li.rouge_l = parse_double(next());
        li.rouge_lsum = parse_double(next());
        li.bleu = parse_double(next());
        li.google_bleu = parse_double(next());
        r.linguistic = li;
      }
    }
    r.unmapped_caption = parse_size(next(), "unmapped_caption");
    r.unmapped_image = parse_size(next(), "unmapped_image");
    r.dropped_triples = parse_size(next(), "dropped_triples");
    reports.push_back(std::move(r));
  }
  return reports;
}

void put_opt(json& j, const char* key, const std::optional<double>& value) {
  if (value) j[key] = *value;
}

json instance_json(const InstanceReport& r) {
  json j;
  j["id"] = r.id;
  json ob;
  ob["n_objects"] = r.objects.n_objects;
  ob["n_targets"] = r.objects.n_targets;
  ob["n_ancestors"] = r.objects.n_ancestors;
  ob["correct"] = r.objects.correct;
  ob["d"] = r.objects.d;
  ob["r"] = r.objects.r;
  ob["o"] = r.objects.o;
  ob["u"] = r.objects.u;
  ob["i"] = r.objects.i;
  ob["hal"] = r.objects.hal;
  put_opt(ob, "hal_rate", r.objects.hal_rate);
  put_opt(ob, "granularity", r.objects.granularity);
  put_opt(ob, "u_rate", r.objects.u_rate);
  put_opt(ob, "mean_wu_palmer", r.objects.mean_wu_palmer);
  put_opt(ob, "chair", r.objects.chair);
  j["objects"] = std::move(ob);
  if (r.roles) {
    json ro;
    ro["n_roles"] = r.roles->n_roles;
    ro["n_targets"] = r.roles->n_targets;
    ro["correct"] = r.roles->correct;
    ro["d"] = r.roles->d;
    ro["r"] = r.roles->r;
    ro["i"] = r.roles->i;
    ro["hal"] = r.roles->hal;
    put_opt(ro, "hal_rate", r.roles->hal_rate);
    put_opt(ro, "granularity", r.roles->granularity);
    ro["ged_cost"] = r.roles->ged_cost;
    j["roles"] = std::move(ro);
  }
  if (r.linguistic) {
    json li;
    li["rouge1"] = r.linguistic->rouge1;
    li["rouge2"] = r.linguistic->rouge2;
    li["rouge_l"] = r.linguistic->rouge_l;
    li["rouge_lsum"] = r.linguistic->rouge_lsum;
    li["bleu"] = r.linguistic->bleu;
    li["google_bleu"] = r.linguistic->google_bleu;
    j["linguistic"] = std::move(li);
  }
  j["unmapped_caption"] = r.unmapped_caption;
  j["unmapped_image"] = r.unmapped_image;
  j["dropped_triples"] = r.dropped_triples;
  return j;
}

std::optional<double> opt_from(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<double>();
}

InstanceReport instance_from_json(const json& j) {
  InstanceReport r;
  r.id = j.at("id").get<std::string>();
  const json& ob = j.at("objects");
  r.objects.n_objects = ob.at("n_objects").get<std::size_t>();
  r.objects.n_targets = ob.at("n_targets").get<std::size_t>();
  r.objects.n_ancestors = ob.at("n_ancestors").get<std::size_t>();
  r.objects.correct = ob.at("correct").get<std::size_t>();
  r.objects.d = ob.at("d").get<std::size_t>();
  r.objects.r = ob.at("r").get<std::size_t>();
  r.objects.o = ob.at("o").get<std::size_t>();
  r.objects.u = ob.at("u").get<std::size_t>();
  r.objects.i = ob.at("i").get<std::size_t>();
  r.objects.hal = ob.at("hal").get<std::size_t>();
  r.objects.hal_rate = opt_from(ob, "hal_rate");
  r.objects.granularity = opt_from(ob, "granularity");
  r.objects.u_rate = opt_from(ob, "u_rate");
  r.objects.mean_wu_palmer = opt_from(ob, "mean_wu_palmer");
  r.objects.chair = opt_from(ob, "chair");
  if (j.contains("roles")) {
    const json& ro = j.at("roles");
    RoleStats stats;
    stats.n_roles = ro.at("n_roles").get<std::size_t>();
    stats.n_targets = ro.at("n_targets").get<std::size_t>();
    stats.correct = ro.at("correct").get<std::size_t>();
    stats.d = ro.at("d").get<std::size_t>();
    stats.r = ro.at("r").get<std::size_t>();
    stats.i = ro.at("i").get<std::size_t>();
    stats.hal = ro.at("hal").get<std::size_t>();
    stats.hal_rate = opt_from(ro, "hal_rate");
    stats.granularity = opt_from(ro, "granularity");
    stats.ged_cost = ro.at("ged_cost").get<double>();
    r.roles = stats;
  }
  if (j.contains("linguistic")) {
    const json& li = j.at("linguistic");
    LinguisticStats stats;
    stats.rouge1 = li.at("rouge1").get<double>();
    stats.rouge2 = li.at("rouge2").get<double>();
    stats.rouge_l = li.at("rouge_l").get<double>();
    stats.rouge_lsum = li.at("rouge_lsum").get<double>();
    stats.bleu = li.at("bleu").get<double>();
    stats.google_bleu = li.at("google_bleu").get<double>();
    r.linguistic = stats;
  }
  r.unmapped_caption = j.at("unmapped_caption").get<std::size_t>();
  r.unmapped_image = j.at("unmapped_image").get<std::size_t>();
  r.dropped_triples = j.at("dropped_triples").get<std::size_t>();
  return r;
}

void mean_cells(std::vector<std::string>& row, const MeanValue& value) {
  row.push_back(value.mean ? format_double(*value.mean) : std::string());
  row.push_back(std::to_string(value.excluded));
}

void mean_json(json& j, const char* key, const MeanValue& value) {
  json v;
  if (value.mean) v["mean"] = *value.mean;
  v["excluded"] = value.excluded;
  j[key] = std::move(v);
}

std::string describe(const MeanValue& value) {
  std::string out = value.mean ? format_double(*value.mean) : "n/a";
  if (value.excluded > 0)
    out += " (" + std::to_string(value.excluded) + " excluded)";
  return out;
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json-lines") return ReportFormat::JsonLines;
  return std::nullopt;
}

const char* to_string(ReportFormat format) {
  return format == ReportFormat::Csv ? "csv" : "json-lines";
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("unformattable double");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::runtime_error("bad number: '" + std::string(text) + "'");
  return value;
}

std::string render_instance_reports(const std::vector<InstanceReport>& reports,
                                    ReportFormat format) {
  if (format == ReportFormat::Csv) return instance_csv(reports);
  std::string out;
  for (const auto& r : reports) out += instance_json(r).dump() + "\n";
  return out;
}

std::vector<InstanceReport> parse_instance_reports(const std::string& content,
                                                   ReportFormat format) {
  if (format == ReportFormat::Csv) return instance_from_csv(content);
  std::vector<InstanceReport> reports;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    reports.push_back(instance_from_json(json::parse(line)));
  }
  return reports;
}

std::string render_aggregate_row(const AggregateReport& aggregate,
                                 ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::vector<std::string> header = {
        "instances", "objects", "targets", "ancestors", "correct", "d", "r",
        "o", "u", "i", "hal"};
    const auto& ob = aggregate.objects;
    std::vector<std::string> row = {std::to_string(aggregate.n_instances),
                                    format_double(ob.objects),
                                    format_double(ob.targets),
                                    format_double(ob.ancestors),
                                    format_double(ob.correct),
                                    format_double(ob.d),
                                    format_double(ob.r),
                                    format_double(ob.o),
                                    format_double(ob.u),
                                    format_double(ob.i),
                                    format_double(ob.hal)};
    auto mean_col = [&](const char* name, const MeanValue& value) {
      header.push_back(name);
      header.push_back(std::string(name) + "_excluded");
      mean_cells(row, value);
    };
    mean_col("hal_rate", ob.hal_rate);
    mean_col("granularity", ob.granularity);
    mean_col("u_rate", ob.u_rate);
    mean_col("d_rate", ob.d_rate);
    mean_col("r_rate", ob.r_rate);
    mean_col("o_rate", ob.o_rate);
    mean_col("wu_palmer_r", ob.mean_wu_palmer);
    mean_col("chair", ob.chair);
    header.push_back("chair_s");
    row.push_back(opt_cell(aggregate.chair_s));
    if (aggregate.roles) {
      const auto& ro = *aggregate.roles;
      header.insert(header.end(),
                    {"role_instances", "roles", "role_targets", "role_correct",
                     "role_d", "role_r", "role_i", "role_hal", "role_ged"});
      row.insert(row.end(),
                 {std::to_string(ro.instances), format_double(ro.roles),
                  format_double(ro.targets), format_double(ro.correct),
                  format_double(ro.d), format_double(ro.r),
                  format_double(ro.i), format_double(ro.hal),
                  format_double(ro.ged_cost)});
      mean_col("role_hal_rate", ro.hal_rate);
      mean_col("role_granularity", ro.granularity);
      mean_col("role_d_rate", ro.d_rate);
      mean_col("role_r_rate", ro.r_rate);
    }
    if (aggregate.linguistic) {
      const auto& li = *aggregate.linguistic;
      header.insert(header.end(),
                    {"linguistic_instances", "rouge1", "rouge2", "rouge_l",
                     "rouge_lsum", "bleu", "google_bleu"});
      row.insert(row.end(),
                 {std::to_string(li.instances), format_double(li.rouge1),
                  format_double(li.rouge2), format_double(li.rouge_l),
                  format_double(li.rouge_lsum), format_double(li.bleu),
                  format_double(li.google_bleu)});
    }
    header.insert(header.end(), kTailColumns.begin(), kTailColumns.end());
    row.insert(row.end(), {std::to_string(aggregate.unmapped_caption),
                           std::to_string(aggregate.unmapped_image),
                           std::to_string(aggregate.dropped_triples)});
    return join(header) + join(row);
  }

  json j;
  j["instances"] = aggregate.n_instances;
  json ob;
  ob["objects"] = aggregate.objects.objects;
  ob["targets"] = aggregate.objects.targets;
  ob["ancestors"] = aggregate.objects.ancestors;
  ob["correct"] = aggregate.objects.correct;
  ob["d"] = aggregate.objects.d;
  ob["r"] = aggregate.objects.r;
  ob["o"] = aggregate.objects.o;
  ob["u"] = aggregate.objects.u;
  ob["i"] = aggregate.objects.i;
  ob["hal"] = aggregate.objects.hal;
  mean_json(ob, "hal_rate", aggregate.objects.hal_rate);
  mean_json(ob, "granularity", aggregate.objects.granularity);
  mean_json(ob, "u_rate", aggregate.objects.u_rate);
  mean_json(ob, "d_rate", aggregate.objects.d_rate);
  mean_json(ob, "r_rate", aggregate.objects.r_rate);
  mean_json(ob, "o_rate", aggregate.objects.o_rate);
  mean_json(ob, "wu_palmer_r", aggregate.objects.mean_wu_palmer);
  mean_json(ob, "chair", aggregate.objects.chair);
  j["objects"] = std::move(ob);
  put_opt(j, "chair_s", aggregate.chair_s);
  if (aggregate.roles) {
    json ro;
    ro["instances"] = aggregate.roles->instances;
    ro["roles"] = aggregate.roles->roles;
    ro["targets"] = aggregate.roles->targets;
    ro["correct"] = aggregate.roles->correct;
    ro["d"] = aggregate.roles->d;
    ro["r"] = aggregate.roles->r;
    ro["i"] = aggregate.roles->i;
    ro["hal"] = aggregate.roles->hal;
    ro["ged_cost"] = aggregate.roles->ged_cost;
    mean_json(ro, "hal_rate", aggregate.roles->hal_rate);
    mean_json(ro, "granularity", aggregate.roles->granularity);
    mean_json(ro, "d_rate", aggregate.roles->d_rate);
    mean_json(ro, "r_rate", aggregate.roles->r_rate);
    j["roles"] = std::move(ro);
  }
  if (aggregate.linguistic) {
    json li;
    li["instances"] = aggregate.linguistic->instances;
    li["rouge1"] = aggregate.linguistic->rouge1;
    li["rouge2"] = aggregate.linguistic->rouge2;
    li["rouge_l"] = aggregate.linguistic->rouge_l;
    li["rouge_lsum"] = aggregate.linguistic->rouge_lsum;
    li["bleu"] = aggregate.linguistic->bleu;
    li["google_bleu"] = aggregate.linguistic->google_bleu;
    j["linguistic"] = std::move(li);
  }
  j["unmapped_caption"] = aggregate.unmapped_caption;
  j["unmapped_image"] = aggregate.unmapped_image;
  j["dropped_triples"] = aggregate.dropped_triples;
  return j.dump() + "\n";
}

std::string render_aggregate_text(const AggregateReport& aggregate) {
  const auto& ob = aggregate.objects;
  std::string out;
  out += "instances: " + std::to_string(aggregate.n_instances) + "\n";
  out += "objects per instance: " + format_double(ob.objects) +
         " caption / " + format_double(ob.targets) + " image, " +
         format_double(ob.ancestors) + " ancestors\n";
  out += "object counts (mean): correct " + format_double(ob.correct) +
         ", D " + format_double(ob.d) + ", R " + format_double(ob.r) +
         ", O " + format_double(ob.o) + ", U " + format_double(ob.u) +
         ", I " + format_double(ob.i) + ", Hal " + format_double(ob.hal) +
         "\n";
  out += "object rates: hal-rate " + describe(ob.hal_rate) +
         ", granularity " + describe(ob.granularity) + ", u-rate " +
         describe(ob.u_rate) + "\n";
  out += "              d-rate " + describe(ob.d_rate) + ", r-rate " +
         describe(ob.r_rate) + ", o-rate " + describe(ob.o_rate) + "\n";
  out += "wu-palmer over R pairs: " + describe(ob.mean_wu_palmer) + "\n";
  out += "chair: per-instance " + describe(ob.chair) + ", per-corpus " +
         (aggregate.chair_s ? format_double(*aggregate.chair_s)
                            : std::string("n/a")) +
         "\n";
  if (aggregate.roles) {
    const auto& ro = *aggregate.roles;
    out += "roles (" + std::to_string(ro.instances) + " instances): " +
           format_double(ro.roles) + " caption / " +
           format_double(ro.targets) + " image triples\n";
    out += "role counts (mean): correct " + format_double(ro.correct) +
           ", D " + format_double(ro.d) + ", R " + format_double(ro.r) +
           ", I " + format_double(ro.i) + ", Hal " + format_double(ro.hal) +
           ", ged " + format_double(ro.ged_cost) + "\n";
    out += "role rates: hal-rate " + describe(ro.hal_rate) +
           ", granularity " + describe(ro.granularity) + ", d-rate " +
           describe(ro.d_rate) + ", r-rate " + describe(ro.r_rate) + "\n";
  }
  if (aggregate.linguistic) {
    const auto& li = *aggregate.linguistic;
    out += "linguistic (" + std::to_string(li.instances) + " instances): " +
           "rouge1 " + format_double(li.rouge1) + ", rouge2 " +
           format_double(li.rouge2) + ", rouge-l " + format_double(li.rouge_l) +
           ", rouge-lsum " + format_double(li.rouge_lsum) + ", bleu " +
           format_double(li.bleu) + ", google-bleu " +
           format_double(li.google_bleu) + "\n";
  }
  out += "drops: " + std::to_string(aggregate.unmapped_caption) +
         " unmapped caption lemmas, " +
         std::to_string(aggregate.unmapped_image) +
         " unmapped image lemmas, " +
         std::to_string(aggregate.dropped_triples) + " dropped triples\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace halcece

#include "halcece/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <unordered_map>
#include <unordered_set>

namespace halcece {
namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& j, const char* field) {
  if (!j.contains(field)) throw std::runtime_error(std::string(field) + " is missing");
  const auto& value = j.at(field);
  if (!value.is_array()) throw std::runtime_error(std::string(field) + " must be a list");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string())
      throw std::runtime_error(std::string(field) + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<std::array<std::string, 3>> triple_list(const json& j, const char* field) {
  if (!j.contains(field)) throw std::runtime_error(std::string(field) + " is missing");
  const auto& value = j.at(field);
  if (!value.is_array()) throw std::runtime_error(std::string(field) + " must be a list");
  std::vector<std::array<std::string, 3>> out;
  for (const auto& item : value) {
    if (!item.is_array() || item.size() != 3 ||
        !std::all_of(item.begin(), item.end(),
                     [](const json& x) { return x.is_string(); }))
      throw std::runtime_error(std::string(field) +
                               " entries must be [head, role, tail] string triples");
    out.push_back({item[0].get<std::string>(), item[1].get<std::string>(),
                   item[2].get<std::string>()});
  }
  return out;
}

void check_triples_reference_objects(
    const std::vector<std::array<std::string, 3>>& triples,
    const std::vector<std::string>& objects, const char* what) {
  std::unordered_set<std::string> lemmas;
  for (const auto& o : objects) lemmas.insert(normalize_lemma(o));
  for (const auto& triple : triples) {
    for (const std::size_t end : {std::size_t{0}, std::size_t{2}}) {
      if (!lemmas.count(normalize_lemma(triple[end])))
        throw std::runtime_error(
            std::string(what) + " triple [" + triple[0] + ", " + triple[1] +
            ", " + triple[2] + "] references \"" + triple[end] +
            "\" which is not in the object list");
    }
  }
}

InstanceRecord parse_record(const json& j) {
  if (!j.is_object()) throw std::runtime_error("record must be an object");
  InstanceRecord r;
  if (!j.contains("id") || !j.at("id").is_string())
    throw std::runtime_error("id is missing or not a string");
  r.id = j.at("id").get<std::string>();
  if (r.id.empty()) throw std::runtime_error("id must be non-empty");

  if (j.contains("caption_text") && !j.at("caption_text").is_null()) {
    if (!j.at("caption_text").is_string())
      throw std::runtime_error("caption_text must be a string");
    r.caption_text = j.at("caption_text").get<std::string>();
  }
  if (j.contains("reference_captions") && !j.at("reference_captions").is_null()) {
    r.reference_captions = string_list(j, "reference_captions");
    if (r.reference_captions.size() > 5)
      throw std::runtime_error("reference_captions allows at most 5 entries");
  }
  r.caption_objects = string_list(j, "caption_objects");
  r.image_objects = string_list(j, "image_objects");
  r.caption_triples = triple_list(j, "caption_triples");
  r.image_triples = triple_list(j, "image_triples");
  check_triples_reference_objects(r.caption_triples, r.caption_objects, "caption");
  check_triples_reference_objects(r.image_triples, r.image_objects, "image");
  return r;
}

}  // namespace

const char* to_string(Side side) {
  return side == Side::Caption ? "caption" : "image";
}

DatasetReadResult read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open dataset " + path.string());

  DatasetReadResult result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto parsed = json::parse(line);
      auto record = parse_record(parsed);
      if (!seen_ids.insert(record.id).second)
        throw std::runtime_error("duplicate id \"" + record.id + "\"");
      result.records.push_back(std::move(record));
    } catch (const std::exception& e) {
      result.errors.push_back({lineno, e.what()});
    }
  }
  return result;
}

Overrides read_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open overrides " + path.string());
  Overrides out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected lemma<TAB>synset_id");
    out[normalize_lemma(line.substr(0, tab))] = line.substr(tab + 1);
  }
  return out;
}

void validate_overrides(const Taxonomy& t, const Overrides& overrides) {
  for (const auto& [lemma, id] : overrides)
    if (!t.find(id))
      throw LoadError("override for \"" + lemma + "\" names unknown synset " + id);
}

namespace {

struct SideMapping {
  std::vector<SynsetIndex> synsets;
  SceneGraph graph;
  // normalized lemma -> node index of its first mapped occurrence
  std::unordered_map<std::string, std::size_t> first_node;
};

SideMapping map_side(const Taxonomy& t, const std::vector<std::string>& objects,
                     const Overrides& overrides, bool dedupe, Side side,
                     std::vector<UnmappedLemma>& unmapped) {
  SideMapping out;
  std::unordered_set<std::string> seen;
  for (const auto& surface : objects) {
    const std::string lemma = normalize_lemma(surface);
    if (dedupe && !seen.insert(lemma).second) continue;

    std::optional<SynsetIndex> synset;
    if (const auto hit = overrides.find(lemma); hit != overrides.end())
      synset = t.find(hit->second);
    else
      synset = t.map_lemma(surface, Pos::Noun);

    if (!synset) {
      unmapped.push_back({surface, side});
      continue;
    }
    out.synsets.push_back(*synset);
    out.graph.nodes.push_back({*synset, surface, lemma});
    out.first_node.emplace(lemma, out.graph.nodes.size() - 1);
  }
  return out;
}

void attach_triples(const std::vector<std::array<std::string, 3>>& triples,
                    SideMapping& mapping, Side side,
                    std::vector<DroppedTriple>& dropped) {
  for (const auto& triple : triples) {
    const auto head = mapping.first_node.find(normalize_lemma(triple[0]));
    const auto tail = mapping.first_node.find(normalize_lemma(triple[2]));
    if (head == mapping.first_node.end() || tail == mapping.first_node.end()) {
      dropped.push_back({triple, side,
                         head == mapping.first_node.end() ? triple[0] : triple[2]});
      continue;
    }
    mapping.graph.edges.push_back(
        {head->second, tail->second, normalize_role_label(triple[1])});
  }
}

}  // namespace

MappedInstance map_instance(const Taxonomy& t, const InstanceRecord& record,
                            const Overrides& overrides, bool dedupe) {
  MappedInstance out;
  out.id = record.id;
  auto caption = map_side(t, record.caption_objects, overrides, dedupe,
                          Side::Caption, out.unmapped);
  auto image = map_side(t, record.image_objects, overrides, dedupe,
                        Side::Image, out.unmapped);
  attach_triples(record.caption_triples, caption, Side::Caption,
                 out.dropped_triples);
  attach_triples(record.image_triples, image, Side::Image, out.dropped_triples);
  out.S = std::move(caption.synsets);
  out.T = std::move(image.synsets);
  out.G_S = std::move(caption.graph);
  out.G_T = std::move(image.graph);
  return out;
}

}  // namespace halcece

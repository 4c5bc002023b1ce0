#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halcece/scene_graph.hpp"
#include "halcece/taxonomy.hpp"

namespace halcece {

/// One evaluation instance as it appears in the dataset file: surface-level
/// concept lists and triples for both the caption and the image side.
struct InstanceRecord {
  std::string id;
  std::optional<std::string> caption_text;
  std::vector<std::string> reference_captions;  // at most 5
  std::vector<std::string> caption_objects;
  std::vector<std::string> image_objects;
  std::vector<std::array<std::string, 3>> caption_triples;  // [head, role, tail]
  std::vector<std::array<std::string, 3>> image_triples;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct DatasetReadResult {
  std::vector<InstanceRecord> records;
  std::vector<RecordError> errors;
};

/// Reads a JSON-lines dataset: one record object per line, blank lines
/// ignored. Lines that fail to parse or violate record invariants (empty or
/// duplicate id, triple endpoint missing from its object list, more than 5
/// reference captions) land in `errors` with their line number while the
/// rest of the file is still processed. Throws LoadError only when the file
/// itself cannot be read.
DatasetReadResult read_dataset(const std::filesystem::path& path);

enum class Side { Caption, Image };

const char* to_string(Side side);

struct UnmappedLemma {
  std::string surface;
  Side side = Side::Caption;
};

struct DroppedTriple {
  std::array<std::string, 3> triple;
  Side side = Side::Caption;
  std::string unmapped_endpoint;
};

/// normalized lemma -> synset id ("n02084071"); takes precedence over the
/// taxonomy's first-sense mapping.
using Overrides = std::map<std::string, std::string>;

/// Parses a two-column `lemma<TAB>synset_id` overrides file. Blank lines
/// and lines starting with '#' are skipped.
Overrides read_overrides(const std::filesystem::path& path);

/// Verifies every override id exists in the taxonomy; throws LoadError
/// naming the first offender otherwise.
void validate_overrides(const Taxonomy& t, const Overrides& overrides);

struct MappedInstance {
  std::string id;
  std::vector<SynsetIndex> S;  // mapped caption objects, input order
  std::vector<SynsetIndex> T;  // mapped image objects, input order
  SceneGraph G_S;
  SceneGraph G_T;
  std::vector<UnmappedLemma> unmapped;
  std::vector<DroppedTriple> dropped_triples;
};

/// Maps both sides of a record onto the taxonomy. Objects that fail to map
/// are recorded in `unmapped` and every triple touching them is dropped
/// into `dropped_triples`. Triple endpoints resolve to the first node with
/// the same normalized lemma. With `dedupe`, repeated normalized lemmas on
/// a side collapse to their first occurrence.
MappedInstance map_instance(const Taxonomy& t, const InstanceRecord& record,
                            const Overrides& overrides = {},
                            bool dedupe = false);

}  // namespace halcece

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace halcece {

enum class Pos : char { Noun = 'n', Verb = 'v' };

inline char pos_letter(Pos p) { return static_cast<char>(p); }

using SynsetIndex = std::uint32_t;
inline constexpr SynsetIndex kNoSynset = std::numeric_limits<SynsetIndex>::max();

/// One WordNet synset: part-of-speech plus zero-padded byte offset,
/// e.g. "n02084071" for the first noun sense of "dog".
struct Synset {
  std::string id;
  Pos pos = Pos::Noun;
  std::vector<std::string> lemmas;
  std::vector<SynsetIndex> hypernyms;
};

/// Non-negative distance in taxonomy hops. Infinite when two synsets live
/// in disconnected components (possible for verbs, never for nouns).
struct SemanticCost {
  double value = 0.0;

  static SemanticCost infinite() {
    return {std::numeric_limits<double>::infinity()};
  }
  bool is_infinite() const { return !(value < std::numeric_limits<double>::infinity()); }

  friend bool operator==(const SemanticCost& a, const SemanticCost& b) {
    return a.value == b.value;
  }
};

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable hypernym DAG over WordNet synsets. Loaded once from WNDB
/// plain-text files; afterwards every query is a pure const function, so a
/// single instance can be shared across threads freely.
class Taxonomy {
 public:
  /// Reads `data.{pos}` / `index.{pos}` for every requested part of speech.
  /// Noun loads locate the root synset (lemma "entity"), verify the graph is
  /// acyclic and rooted, and populate the depth cache.
  static Taxonomy load(const std::filesystem::path& wordnet_dir,
                       const std::set<Pos>& pos_set = {Pos::Noun});

  std::size_t size() const { return synsets_.size(); }
  std::size_t size(Pos pos) const;
  bool has_pos(Pos pos) const;

  const Synset& synset(SynsetIndex i) const { return synsets_.at(i); }
  std::optional<SynsetIndex> find(std::string_view synset_id) const;
  SynsetIndex root() const { return root_; }

  /// Surface form -> synset. Lowercases, trims, joins spaces with
  /// underscores, then looks up the first listed sense; on a miss, applies a
  /// small suffix-stripping fallback (plural rules for nouns, the usual
  /// inflection detachments for verbs). Unmappable surfaces yield nullopt.
  std::optional<SynsetIndex> map_lemma(std::string_view surface, Pos pos) const;

  /// All senses of an already-normalized lemma, in sense order.
  const std::vector<SynsetIndex>* senses(std::string_view normalized_lemma, Pos pos) const;

  /// Length of the shortest path between a and b in the undirected graph
  /// induced by hypernym edges (unit weights, breadth-first).
  SemanticCost path_cost(SynsetIndex a, SynsetIndex b) const;

  /// The node sequence realizing path_cost(a, b), a first. Empty when
  /// unreachable. Deterministic: neighbors are scanned in index order.
  std::vector<SynsetIndex> shortest_path(SynsetIndex a, SynsetIndex b) const;

  /// Deepest common member of the two hypernym closures (closures include
  /// the synset itself). Ties break to the smallest synset id. Nouns only.
  SynsetIndex lca(SynsetIndex a, SynsetIndex b) const;

  /// 2*d(lca) / (d(a)+d(b)) with the root counted at depth 1. Nouns only.
  double wu_palmer(SynsetIndex a, SynsetIndex b) const;

  /// Unique synsets in the transitive hypernym closure, excluding a itself.
  std::size_t ancestor_count(SynsetIndex a) const;

  /// Breadth-first distance from the root in the undirected hypernym
  /// graph, so depth(s) == path_cost(s, root) always. 0 for the root,
  /// -1 for verbs (which have no common root).
  int depth(SynsetIndex i) const { return depth_.at(i); }
  int max_noun_depth() const { return max_noun_depth_; }

  /// True when a and b sit in the same undirected hypernym component.
  bool same_component(SynsetIndex a, SynsetIndex b) const {
    return component_.at(a) == component_.at(b);
  }

  const std::vector<SynsetIndex>& hyponyms(SynsetIndex i) const { return hyponyms_.at(i); }

  /// Indices of all synsets of one pos, in file order.
  std::vector<SynsetIndex> all(Pos pos) const;

 private:
  std::vector<Synset> synsets_;
  std::unordered_map<std::string, SynsetIndex> by_id_;
  // (pos letter + lemma) -> sense-ordered synset indices
  std::unordered_map<std::string, std::vector<SynsetIndex>> lemma_index_;
  std::vector<std::vector<SynsetIndex>> hyponyms_;
  std::vector<int> depth_;
  std::vector<SynsetIndex> component_;
  SynsetIndex root_ = kNoSynset;
  int max_noun_depth_ = 0;

  void finalize(const std::set<Pos>& pos_set);
  void check_acyclic() const;
};

/// Lowercase, trim, collapse whitespace runs into single underscores.
std::string normalize_lemma(std::string_view surface);

/// Lowercase and collapse whitespace runs into single spaces. Used for role
/// labels, which keep their spaces ("next to").
std::string normalize_role_label(std::string_view label);

}  // namespace halcece

#include "halcece/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace halcece {
namespace {

bool is_header_line(const std::string& line) {
  return line.empty() || (line.size() >= 2 && line[0] == ' ' && line[1] == ' ');
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string pos_key(Pos pos, std::string_view lemma) {
  std::string key(1, pos_letter(pos));
  key += lemma;
  return key;
}

struct RawPointer {
  std::string target_id;  // pos letter + 8-digit offset
};

// Noun fallback: plural stripping, first index hit wins.
const std::pair<const char*, const char*> kNounSuffixes[] = {
    {"s", ""}, {"es", ""}, {"ies", "y"}};

// Verb fallback: standard inflection detachments, first index hit wins.
const std::pair<const char*, const char*> kVerbSuffixes[] = {
    {"s", ""},   {"ies", "y"}, {"es", "e"},  {"es", ""},
    {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};

std::optional<std::string> apply_suffix(const std::string& word,
                                        std::string_view suffix,
                                        std::string_view replacement) {
  if (word.size() <= suffix.size() || !word.ends_with(suffix)) return std::nullopt;
  std::string out = word.substr(0, word.size() - suffix.size());
  out += replacement;
  return out;
}

}  // namespace

std::string normalize_lemma(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  bool pending_sep = false;
  for (char raw : surface) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      if (!out.empty()) pending_sep = true;
      continue;
    }
    if (pending_sep) {
      out += '_';
      pending_sep = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string normalize_role_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  bool pending_sep = false;
  for (char raw : label) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      if (!out.empty()) pending_sep = true;
      continue;
    }
    if (pending_sep) {
      out += ' ';
      pending_sep = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

Taxonomy Taxonomy::load(const std::filesystem::path& wordnet_dir,
                        const std::set<Pos>& pos_set) {
  Taxonomy t;
  std::vector<std::vector<RawPointer>> raw_pointers;

  for (Pos pos : pos_set) {
    const std::string suffix = pos == Pos::Noun ? "noun" : "verb";
    const auto data_path = wordnet_dir / ("data." + suffix);
    const auto index_path = wordnet_dir / ("index." + suffix);

    std::ifstream data(data_path);
    if (!data) throw LoadError("cannot open " + data_path.string());

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(data, line)) {
      ++lineno;
      if (is_header_line(line)) continue;
      std::istringstream in(line);
      const auto fail = [&](const std::string& what) -> ParseError {
        std::ostringstream msg;
        msg << data_path.string() << ":" << lineno << ": " << what;
        return ParseError(msg.str());
      };

      std::string offset, lex_filenum, ss_type, w_cnt_hex;
      if (!(in >> offset >> lex_filenum >> ss_type >> w_cnt_hex))
        throw fail("truncated synset header");
      if (offset.size() != 8 ||
          !std::all_of(offset.begin(), offset.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        throw fail("bad synset offset '" + offset + "'");
      if (ss_type.size() != 1) throw fail("bad ss_type '" + ss_type + "'");

      Synset s;
      s.pos = pos;
      s.id = pos_letter(pos) + offset;

      std::size_t w_cnt = 0;
      try {
        w_cnt = std::stoul(w_cnt_hex, nullptr, 16);
      } catch (const std::exception&) {
        throw fail("bad word count '" + w_cnt_hex + "'");
      }
      if (w_cnt == 0) throw fail("synset with no words");
      for (std::size_t w = 0; w < w_cnt; ++w) {
        std::string word, lex_id;
        if (!(in >> word >> lex_id)) throw fail("truncated word list");
        s.lemmas.push_back(lower(word));
      }

      std::string p_cnt_str;
      if (!(in >> p_cnt_str)) throw fail("missing pointer count");
      std::size_t p_cnt = 0;
      try {
        p_cnt = std::stoul(p_cnt_str, nullptr, 10);
      } catch (const std::exception&) {
        throw fail("bad pointer count '" + p_cnt_str + "'");
      }

      std::vector<RawPointer> pointers;
      for (std::size_t p = 0; p < p_cnt; ++p) {
        std::string sym, target_offset, target_pos, source_target;
        if (!(in >> sym >> target_offset >> target_pos >> source_target))
          throw fail("truncated pointer list");
        if (sym == "@" || sym == "@i")
          pointers.push_back({target_pos + target_offset});
      }
      // Verb frames and the gloss are irrelevant here; the line ends.

      if (t.by_id_.count(s.id)) throw fail("duplicate synset " + s.id);
      const auto index = static_cast<SynsetIndex>(t.synsets_.size());
      t.by_id_.emplace(s.id, index);
      t.synsets_.push_back(std::move(s));
      raw_pointers.push_back(std::move(pointers));
    }

    std::ifstream idx(index_path);
    if (!idx) throw LoadError("cannot open " + index_path.string());
    lineno = 0;
    while (std::getline(idx, line)) {
      ++lineno;
      if (is_header_line(line)) continue;
      std::istringstream in(line);
      const auto fail = [&](const std::string& what) -> ParseError {
        std::ostringstream msg;
        msg << index_path.string() << ":" << lineno << ": " << what;
        return ParseError(msg.str());
      };

      std::string lemma, pos_field;
      std::size_t synset_cnt = 0, p_cnt = 0;
      if (!(in >> lemma >> pos_field >> synset_cnt >> p_cnt))
        throw fail("truncated index entry");
      std::string skip;
      for (std::size_t p = 0; p < p_cnt; ++p)
        if (!(in >> skip)) throw fail("truncated pointer symbols");
      std::size_t sense_cnt = 0, tagsense_cnt = 0;
      if (!(in >> sense_cnt >> tagsense_cnt)) throw fail("truncated sense counts");

      auto& senses = t.lemma_index_[pos_key(pos, lemma)];
      for (std::size_t k = 0; k < synset_cnt; ++k) {
        std::string offset;
        if (!(in >> offset)) throw fail("truncated offset list");
        const std::string id = pos_letter(pos) + offset;
        auto found = t.by_id_.find(id);
        if (found == t.by_id_.end())
          throw IntegrityError(index_path.string() + ":" + std::to_string(lineno) +
                               ": index references unknown synset " + id);
        senses.push_back(found->second);
      }
      if (senses.empty())
        throw fail("index entry for '" + lemma + "' lists no synsets");
    }
  }

  // Resolve hypernym pointers now that every synset of every pos is known.
  for (SynsetIndex i = 0; i < t.synsets_.size(); ++i) {
    for (const auto& ptr : raw_pointers[i]) {
      auto found = t.by_id_.find(ptr.target_id);
      if (found == t.by_id_.end()) {
        // Hypernyms never cross part of speech; a miss is data corruption.
        throw IntegrityError("synset " + t.synsets_[i].id +
                             " points to unknown hypernym " + ptr.target_id);
      }
      t.synsets_[i].hypernyms.push_back(found->second);
    }
  }

  t.finalize(pos_set);
  return t;
}

void Taxonomy::finalize(const std::set<Pos>& pos_set) {
  const std::size_t n = synsets_.size();
  hyponyms_.assign(n, {});
  for (SynsetIndex i = 0; i < n; ++i)
    for (SynsetIndex h : synsets_[i].hypernyms) hyponyms_[h].push_back(i);

  check_acyclic();

  // Undirected components via union-find.
  std::vector<SynsetIndex> parent(n);
  for (SynsetIndex i = 0; i < n; ++i) parent[i] = i;
  const auto find_root = [&](SynsetIndex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (SynsetIndex i = 0; i < n; ++i)
    for (SynsetIndex h : synsets_[i].hypernyms) {
      const auto a = find_root(i), b = find_root(h);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  component_.resize(n);
  for (SynsetIndex i = 0; i < n; ++i) component_[i] = find_root(i);

  depth_.assign(n, -1);
  if (pos_set.count(Pos::Noun)) {
    const auto* entity = senses("entity", Pos::Noun);
    if (entity == nullptr || entity->empty())
      throw IntegrityError("noun database has no 'entity' synset to use as root");
    root_ = entity->front();

    // Breadth-first distance from the root over undirected hypernym edges,
    // so depth(s) == path_cost(s, root) holds by construction. On a tree
    // this equals the hypernym-only depth; with multiple inheritance a
    // down-then-up detour can be shorter than every pure hypernym path.
    std::deque<SynsetIndex> queue{root_};
    depth_[root_] = 0;
    while (!queue.empty()) {
      const SynsetIndex u = queue.front();
      queue.pop_front();
      const auto visit = [&](SynsetIndex v) {
        if (depth_[v] < 0) {
          depth_[v] = depth_[u] + 1;
          queue.push_back(v);
        }
      };
      for (SynsetIndex v : hyponyms_[u]) visit(v);
      for (SynsetIndex v : synsets_[u].hypernyms) visit(v);
    }
    for (SynsetIndex i = 0; i < n; ++i) {
      if (synsets_[i].pos != Pos::Noun) continue;
      if (depth_[i] < 0)
        throw IntegrityError("noun synset " + synsets_[i].id +
                             " is not reachable from the root");
      max_noun_depth_ = std::max(max_noun_depth_, depth_[i]);
    }
  }
}

void Taxonomy::check_acyclic() const {
  // Kahn's algorithm over directed hypernym edges, nouns only. Depth,
  // LCA, and closures all assume the noun graph is a rooted DAG. The verb
  // graph is exempt: WordNet 3.0 ships a genuine verb cycle
  // (restrain v02422663 <-> inhibit v02423762), and verbs are only ever
  // queried through cycle-safe breadth-first searches.
  const std::size_t n = synsets_.size();
  std::vector<std::size_t> out_degree(n);
  std::size_t nouns = 0;
  std::deque<SynsetIndex> queue;
  for (SynsetIndex i = 0; i < n; ++i) {
    if (synsets_[i].pos != Pos::Noun) continue;
    ++nouns;
    out_degree[i] = synsets_[i].hypernyms.size();
    if (out_degree[i] == 0) queue.push_back(i);
  }
  std::size_t processed = 0;
  while (!queue.empty()) {
    const SynsetIndex u = queue.front();
    queue.pop_front();
    ++processed;
    for (SynsetIndex v : hyponyms_[u])
      if (--out_degree[v] == 0) queue.push_back(v);
  }
  if (processed != nouns)
    throw IntegrityError("noun hypernym graph contains a cycle");
}

std::size_t Taxonomy::size(Pos pos) const {
  return static_cast<std::size_t>(
      std::count_if(synsets_.begin(), synsets_.end(),
                    [pos](const Synset& s) { return s.pos == pos; }));
}

bool Taxonomy::has_pos(Pos pos) const {
  return std::any_of(synsets_.begin(), synsets_.end(),
                     [pos](const Synset& s) { return s.pos == pos; });
}

std::optional<SynsetIndex> Taxonomy::find(std::string_view synset_id) const {
  auto found = by_id_.find(std::string(synset_id));
  if (found == by_id_.end()) return std::nullopt;
  return found->second;
}

const std::vector<SynsetIndex>* Taxonomy::senses(std::string_view normalized_lemma,
                                                 Pos pos) const {
  auto found = lemma_index_.find(pos_key(pos, normalized_lemma));
  if (found == lemma_index_.end()) return nullptr;
  return &found->second;
}

std::optional<SynsetIndex> Taxonomy::map_lemma(std::string_view surface, Pos pos) const {
  const std::string lemma = normalize_lemma(surface);
  if (lemma.empty()) return std::nullopt;
  if (const auto* hit = senses(lemma, pos)) return hit->front();

  if (pos == Pos::Noun) {
    for (const auto& [suffix, replacement] : kNounSuffixes)
      if (auto candidate = apply_suffix(lemma, suffix, replacement))
        if (const auto* hit = senses(*candidate, pos)) return hit->front();
  } else {
    for (const auto& [suffix, replacement] : kVerbSuffixes)
      if (auto candidate = apply_suffix(lemma, suffix, replacement))
        if (const auto* hit = senses(*candidate, pos)) return hit->front();
  }
  return std::nullopt;
}

SemanticCost Taxonomy::path_cost(SynsetIndex a, SynsetIndex b) const {
  if (a == b) return {0.0};
  if (component_[a] != component_[b]) return SemanticCost::infinite();
  std::vector<int> dist(synsets_.size(), -1);
  std::deque<SynsetIndex> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    const SynsetIndex u = queue.front();
    queue.pop_front();
    if (u == b) return {static_cast<double>(dist[u])};
    const auto visit = [&](SynsetIndex v) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    };
    for (SynsetIndex v : synsets_[u].hypernyms) visit(v);
    for (SynsetIndex v : hyponyms_[u]) visit(v);
  }
  return SemanticCost::infinite();
}

std::vector<SynsetIndex> Taxonomy::shortest_path(SynsetIndex a, SynsetIndex b) const {
  if (a == b) return {a};
  if (component_[a] != component_[b]) return {};
  std::vector<SynsetIndex> parent(synsets_.size(), kNoSynset);
  std::vector<char> seen(synsets_.size(), 0);
  std::deque<SynsetIndex> queue{a};
  seen[a] = 1;
  while (!queue.empty()) {
    const SynsetIndex u = queue.front();
    queue.pop_front();
    if (u == b) break;
    const auto visit = [&](SynsetIndex v) {
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = u;
        queue.push_back(v);
      }
    };
    for (SynsetIndex v : synsets_[u].hypernyms) visit(v);
    for (SynsetIndex v : hyponyms_[u]) visit(v);
  }
  if (!seen[b]) return {};
  std::vector<SynsetIndex> path;
  for (SynsetIndex cur = b; cur != kNoSynset; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Transitive hypernym closure, including the start synset.
std::unordered_set<SynsetIndex> closure(const std::vector<Synset>& synsets,
                                        SynsetIndex start) {
  std::unordered_set<SynsetIndex> out{start};
  std::deque<SynsetIndex> queue{start};
  while (!queue.empty()) {
    const SynsetIndex u = queue.front();
    queue.pop_front();
    for (SynsetIndex v : synsets[u].hypernyms)
      if (out.insert(v).second) queue.push_back(v);
  }
  return out;
}

}  // namespace

SynsetIndex Taxonomy::lca(SynsetIndex a, SynsetIndex b) const {
  if (synsets_[a].pos != Pos::Noun || synsets_[b].pos != Pos::Noun)
    throw std::logic_error("lca is defined for nouns only");
  const auto ca = closure(synsets_, a);
  const auto cb = closure(synsets_, b);
  std::vector<SynsetIndex> common;
  for (SynsetIndex s : ca)
    if (cb.count(s)) common.push_back(s);

  // Restrict to the minimal frontier: drop every common ancestor that has a
  // strict descendant in the common set. This keeps lca(a, b) = b exactly
  // when b is an ancestor of a, which a pure depth comparison cannot
  // guarantee once depth stops being monotone (multiple inheritance).
  SynsetIndex best = kNoSynset;
  for (SynsetIndex m : common) {
    const bool minimal = std::none_of(
        common.begin(), common.end(), [&](SynsetIndex c) {
          return c != m && closure(synsets_, c).count(m);
        });
    if (!minimal) continue;
    if (best == kNoSynset || depth_[m] > depth_[best] ||
        (depth_[m] == depth_[best] && synsets_[m].id < synsets_[best].id))
      best = m;
  }
  if (best == kNoSynset)
    throw IntegrityError("noun synsets share no common ancestor");
  return best;
}

double Taxonomy::wu_palmer(SynsetIndex a, SynsetIndex b) const {
  const SynsetIndex anc = lca(a, b);
  const double d_lca = depth_[anc] + 1;
  const double d_a = depth_[a] + 1;
  const double d_b = depth_[b] + 1;
  return 2.0 * d_lca / (d_a + d_b);
}

std::size_t Taxonomy::ancestor_count(SynsetIndex a) const {
  return closure(synsets_, a).size() - 1;
}

std::vector<SynsetIndex> Taxonomy::all(Pos pos) const {
  std::vector<SynsetIndex> out;
  for (SynsetIndex i = 0; i < synsets_.size(); ++i)
    if (synsets_[i].pos == pos) out.push_back(i);
  return out;
}

}  // namespace halcece

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "halcece/assignment.hpp"
#include "halcece/taxonomy.hpp"

namespace halcece {

enum class EditKind { Replace, Delete, Insert };

/// Phenomenon taxonomy for caption-vs-image concept edits. A matched pair
/// with cost 0 is Correct; costly matches split by the LCA test into
/// over-specification (O), under-specification (U), and plain replacement
/// (R); unmatched caption concepts are deletions (D) and unmatched image
/// concepts insertions (I).
enum class Phenomenon { Correct, R, O, U, D, I };

const char* to_string(EditKind kind);
const char* to_string(Phenomenon p);

struct Edit {
  EditKind kind = EditKind::Replace;
  std::optional<std::size_t> source_index;  // position in S, absent for Insert
  std::optional<std::size_t> target_index;  // position in T, absent for Delete
  std::optional<SynsetIndex> source;
  std::optional<SynsetIndex> target;
  double cost = 0.0;
  Phenomenon phenomenon = Phenomenon::Correct;
};

struct EditPlan {
  /// Match and delete edits, in S order. Replace-kind edits have cost 0
  /// exactly when the phenomenon is Correct.
  std::vector<Edit> edits;
  /// Insert edits in T order, kept out of the cost per the suggestion
  /// semantics.
  std::vector<Edit> insert_suggestions;
  /// (source_index, target_index) for every matched pair, in S order.
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;
  /// Sum of Replace + Delete costs; Insert costs excluded.
  double total_cost = 0.0;

  double insert_cost() const {
    double sum = 0.0;
    for (const auto& e : insert_suggestions) sum += e.cost;
    return sum;
  }
  /// Full bipartite objective, the quantity the assignment minimizes.
  double cost_with_inserts() const { return total_cost + insert_cost(); }
  std::size_t count(Phenomenon p) const;
};

/// path_cost(s, g): semantic distance of substituting caption concept s by
/// image concept g.
SemanticCost substitution_cost(const Taxonomy& t, SynsetIndex s, SynsetIndex g);

/// depth(s): walking the concept up to the root removes it.
SemanticCost deletion_cost(const Taxonomy& t, SynsetIndex s);

/// depth(g), mirroring deletion.
SemanticCost insertion_cost(const Taxonomy& t, SynsetIndex g);

/// O / U / R split for a costly matched pair (s != g required):
/// lca = g means the caption over-specifies, lca = s means it
/// under-specifies, anything else is a replacement.
Phenomenon classify_pair(const Taxonomy& t, SynsetIndex s, SynsetIndex g);

/// The (n+m)x(n+m) square assignment matrix: top-left substitution block,
/// top-right diagonal deletions, bottom-left diagonal insertions,
/// bottom-right zeros. Forbidden cells hold a finite sentinel strictly
/// greater than 2 * max_noun_depth * (n+m), which no optimal solution can
/// touch because the all-diagonal completion is always cheaper.
CostMatrix object_cost_matrix(const Taxonomy& t,
                              const std::vector<SynsetIndex>& S,
                              const std::vector<SynsetIndex>& T);

/// Globally minimal edit plan turning caption multiset S into image
/// multiset T. Deterministic for identical inputs.
EditPlan object_edit_plan(const Taxonomy& t, const std::vector<SynsetIndex>& S,
                          const std::vector<SynsetIndex>& T);

}  // namespace halcece

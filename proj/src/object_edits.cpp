#include "halcece/object_edits.hpp"

#include <algorithm>
#include <stdexcept>

namespace halcece {

const char* to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Replace: return "replace";
    case EditKind::Delete: return "delete";
    case EditKind::Insert: return "insert";
  }
  return "?";
}

const char* to_string(Phenomenon p) {
  switch (p) {
    case Phenomenon::Correct: return "correct";
    case Phenomenon::R: return "R";
    case Phenomenon::O: return "O";
    case Phenomenon::U: return "U";
    case Phenomenon::D: return "D";
    case Phenomenon::I: return "I";
  }
  return "?";
}

std::size_t EditPlan::count(Phenomenon p) const {
  const auto matches = [p](const Edit& e) { return e.phenomenon == p; };
  return std::count_if(edits.begin(), edits.end(), matches) +
         std::count_if(insert_suggestions.begin(), insert_suggestions.end(),
                       matches);
}

SemanticCost substitution_cost(const Taxonomy& t, SynsetIndex s, SynsetIndex g) {
  return t.path_cost(s, g);
}

SemanticCost deletion_cost(const Taxonomy& t, SynsetIndex s) {
  return {static_cast<double>(t.depth(s))};
}

SemanticCost insertion_cost(const Taxonomy& t, SynsetIndex g) {
  return {static_cast<double>(t.depth(g))};
}

Phenomenon classify_pair(const Taxonomy& t, SynsetIndex s, SynsetIndex g) {
  if (s == g) throw std::logic_error("classify_pair requires distinct synsets");
  const SynsetIndex anc = t.lca(s, g);
  if (anc == g) return Phenomenon::O;
  if (anc == s) return Phenomenon::U;
  return Phenomenon::R;
}

CostMatrix object_cost_matrix(const Taxonomy& t,
                              const std::vector<SynsetIndex>& S,
                              const std::vector<SynsetIndex>& T) {
  const std::size_t n = S.size(), m = T.size();
  const double sentinel =
      2.0 * t.max_noun_depth() * static_cast<double>(n + m) + 1.0;
  CostMatrix cost(n + m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      cost.at(i, j) = substitution_cost(t, S[i], T[j]).value;
    for (std::size_t k = 0; k < n; ++k)
      cost.at(i, m + k) = k == i ? deletion_cost(t, S[i]).value : sentinel;
  }
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t j = 0; j < m; ++j)
      cost.at(n + l, j) = j == l ? insertion_cost(t, T[l]).value : sentinel;
  // Bottom-right block stays zero: a dummy row on a deletion column means
  // that deletion did not happen.
  return cost;
}

EditPlan object_edit_plan(const Taxonomy& t, const std::vector<SynsetIndex>& S,
                          const std::vector<SynsetIndex>& T) {
  const std::size_t n = S.size(), m = T.size();
  const auto assignment = solve_assignment(object_cost_matrix(t, S, T));

  EditPlan plan;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = assignment.column_of_row[i];
    Edit e;
    e.source_index = i;
    e.source = S[i];
    if (j < m) {
      e.kind = EditKind::Replace;
      e.target_index = j;
      e.target = T[j];
      e.cost = substitution_cost(t, S[i], T[j]).value;
      e.phenomenon =
          e.cost == 0.0 ? Phenomenon::Correct : classify_pair(t, S[i], T[j]);
      plan.matched_pairs.emplace_back(i, j);
    } else {
      if (j != m + i)
        throw std::logic_error("assignment landed on a forbidden cell");
      e.kind = EditKind::Delete;
      e.cost = deletion_cost(t, S[i]).value;
      e.phenomenon = Phenomenon::D;
    }
    plan.total_cost += e.cost;
    plan.edits.push_back(std::move(e));
  }
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t j = assignment.column_of_row[n + l];
    if (j < m) {
      if (j != l)
        throw std::logic_error("assignment landed on a forbidden cell");
      Edit e;
      e.kind = EditKind::Insert;
      e.target_index = l;
      e.target = T[l];
      e.cost = insertion_cost(t, T[l]).value;
      e.phenomenon = Phenomenon::I;
      plan.insert_suggestions.push_back(std::move(e));
    }
  }
  return plan;
}

}  // namespace halcece

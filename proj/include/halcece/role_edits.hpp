#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halcece/object_edits.hpp"
#include "halcece/scene_graph.hpp"
#include "halcece/taxonomy.hpp"

namespace halcece {

// Flat role deletion/insertion weights. The verb hierarchy is far shallower
// than the noun one and carries no usable depth signal, so roles enter and
// leave the graph at unit cost.
inline constexpr double kRoleDeletionCost = 1.0;
inline constexpr double kRoleInsertionCost = 1.0;

// Substitution weight for role pairs that cannot be compared through the verb
// taxonomy. One more than delete+insert, so unseen labels are always cheaper
// to remove and re-add than to substitute directly.
inline constexpr double kUnseenRoleCost =
    kRoleDeletionCost + kRoleInsertionCost + 1.0;

// Cost of turning role label r1 into r2: 0 for equal labels, the verb-taxonomy
// path cost when both labels map to verbs in the same component, kUnseenRoleCost
// otherwise. Labels are normalized internally.
double role_substitution_cost(const Taxonomy& t, const std::string& r1,
                              const std::string& r2);

enum class RoleCause {
  HallucinatedRole,   // source role with no usable counterpart
  Collateral,         // an endpoint of the source edge was deleted
  PostHocReplacement, // the role changed between matched objects
  UncoveredTarget,    // target role missing from the caption
};

std::string to_string(RoleCause cause);

struct RoleEdit {
  EditKind kind;
  std::optional<std::size_t> source_edge; // index into the source graph's edges
  std::optional<std::size_t> target_edge; // index into the target graph's edges
  RoleCause cause;
  double cost = 0.0;
};

struct NodeMatch {
  std::size_t source = 0;
  std::size_t target = 0;
  double cost = 0.0; // plain taxonomy substitution cost, no edge term
};

struct RolePlan {
  std::vector<NodeMatch> node_matching;       // source order
  std::vector<std::size_t> deleted_nodes;     // source indices, ascending
  std::vector<std::size_t> inserted_nodes;    // target indices, ascending
  // (source edge, target edge) pairs consumed at zero substitution cost.
  std::vector<std::pair<std::size_t, std::size_t>> correct_roles;
  // Deletes and replaces in source-edge order, then inserts in target-edge
  // order.
  std::vector<RoleEdit> role_edits;

  // Node substitutions plus node deletions, at plain taxonomy costs.
  double node_plan_cost = 0.0;
  // node_plan_cost plus all role edit costs except inserts: the reported
  // transformation cost, mirroring the object plan's insert exclusion.
  double ged_cost = 0.0;
  // Full objective including node and role insert charges; comparable with
  // exact_ged and never below it.
  double objective_with_inserts = 0.0;

  std::size_t count(EditKind kind) const;
  std::size_t count(RoleCause cause) const;
};

struct RoleConfig {
  // Augment node assignment costs with half the cost of matching the incident
  // role-label multisets. Off, the node matrix is the plain object matrix.
  bool edge_augmented = true;
};

// Approximate graph edit distance: assignment-based node matching followed by
// rule-based edge resolution with post-hoc role-replacement reasoning. All
// graph nodes must carry mapped synsets.
RolePlan approx_ged(const Taxonomy& t, const SceneGraph& source,
                    const SceneGraph& target, const RoleConfig& config = {});

// Exhaustive minimum of the full objective (insert charges included) over all
// injective partial node matchings. Test oracle only; throws
// std::invalid_argument when either side exceeds node_limit.
double exact_ged(const Taxonomy& t, const SceneGraph& source,
                 const SceneGraph& target, std::size_t node_limit = 5);

// Surface form of an edge, for reports and golden comparisons.
struct TripleText {
  std::string head;
  std::string role;
  std::string tail;
};

bool operator==(const TripleText& a, const TripleText& b);

TripleText render(const SceneGraph& graph, const SceneEdge& edge);

} // namespace halcece

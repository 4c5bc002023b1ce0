#include "halcece/role_edits.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "halcece/assignment.hpp"

namespace halcece {

namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

double verb_path_or_unseen(const Taxonomy& t, const std::string& r1,
                           const std::string& r2) {
  auto a = t.map_lemma(normalize_lemma(r1), Pos::Verb);
  auto b = t.map_lemma(normalize_lemma(r2), Pos::Verb);
  if (!a || !b || !t.same_component(*a, *b)) return kUnseenRoleCost;
  return t.path_cost(*a, *b).value;
}

// Optimal edit cost between two role-label multisets: substitutions at
// role_substitution_cost, unmatched labels at flat delete/insert cost. Same
// square layout as the object matrix, with a forbidden-cell sentinel.
double label_assignment_cost(const Taxonomy& t,
                             const std::vector<std::string>& source,
                             const std::vector<std::string>& target) {
  if (source.empty()) return kRoleInsertionCost * target.size();
  if (target.empty()) return kRoleDeletionCost * source.size();

  const std::size_t n = source.size();
  const std::size_t m = target.size();
  const std::size_t dim = n + m;
  CostMatrix cost(dim, 0.0);
  double max_sub = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double sub = role_substitution_cost(t, source[i], target[j]);
      cost.at(i, j) = sub;
      max_sub = std::max(max_sub, sub);
    }
  const double forbidden =
      (max_sub + kRoleDeletionCost + kRoleInsertionCost) * dim + 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost.at(i, m + j) = i == j ? kRoleDeletionCost : forbidden;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      cost.at(n + i, j) = i == j ? kRoleInsertionCost : forbidden;
  return solve_assignment(cost).total;
}

std::vector<std::string> incident_labels(const SceneGraph& g, std::size_t node) {
  std::vector<std::string> labels;
  for (const auto& e : g.edges)
    if (e.head == node || e.tail == node) labels.push_back(e.role);
  return labels;
}

void require_mapped(const SceneGraph& g, const char* side) {
  for (const auto& node : g.nodes)
    if (node.synset == kNoSynset)
      throw std::invalid_argument(std::string("unmapped node on ") + side +
                                  " side: " + node.surface);
}

// Edge edit cost for a fixed node matching, under the same cost model the
// approximation reports: per matched endpoint pair an optimal label
// assignment, flat deletes/inserts for edges touching unmatched nodes.
double edge_cost_for_matching(const Taxonomy& t, const SceneGraph& gs,
                              const SceneGraph& gt,
                              const std::vector<std::size_t>& match_of,
                              const std::vector<std::size_t>& preimage_of) {
  std::map<std::pair<std::size_t, std::size_t>,
           std::pair<std::vector<std::string>, std::vector<std::string>>>
      groups;
  double cost = 0.0;
  for (const auto& e : gs.edges) {
    if (match_of[e.head] == kUnmatched || match_of[e.tail] == kUnmatched)
      cost += kRoleDeletionCost;
    else
      groups[{match_of[e.head], match_of[e.tail]}].first.push_back(e.role);
  }
  for (const auto& e : gt.edges) {
    if (preimage_of[e.head] == kUnmatched || preimage_of[e.tail] == kUnmatched)
      cost += kRoleInsertionCost;
    else
      groups[{e.head, e.tail}].second.push_back(e.role);
  }
  for (const auto& [key, labels] : groups)
    cost += label_assignment_cost(t, labels.first, labels.second);
  return cost;
}

} // namespace

double role_substitution_cost(const Taxonomy& t, const std::string& r1,
                              const std::string& r2) {
  const std::string a = normalize_role_label(r1);
  const std::string b = normalize_role_label(r2);
  if (a == b) return 0.0;
  return verb_path_or_unseen(t, a, b);
}

std::string to_string(RoleCause cause) {
  switch (cause) {
    case RoleCause::HallucinatedRole: return "hallucinated-role";
    case RoleCause::Collateral: return "collateral";
    case RoleCause::PostHocReplacement: return "post-hoc-replacement";
    case RoleCause::UncoveredTarget: return "uncovered-target";
  }
  return "?";
}

std::size_t RolePlan::count(EditKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(role_edits.begin(), role_edits.end(),
                    [&](const RoleEdit& e) { return e.kind == kind; }));
}

std::size_t RolePlan::count(RoleCause cause) const {
  return static_cast<std::size_t>(
      std::count_if(role_edits.begin(), role_edits.end(),
                    [&](const RoleEdit& e) { return e.cause == cause; }));
}

bool operator==(const TripleText& a, const TripleText& b) {
  return a.head == b.head && a.role == b.role && a.tail == b.tail;
}

TripleText render(const SceneGraph& graph, const SceneEdge& edge) {
  return {graph.nodes[edge.head].surface, edge.role,
          graph.nodes[edge.tail].surface};
}

RolePlan approx_ged(const Taxonomy& t, const SceneGraph& source,
                    const SceneGraph& target, const RoleConfig& config) {
  require_mapped(source, "source");
  require_mapped(target, "target");

  const std::size_t n = source.nodes.size();
  const std::size_t m = target.nodes.size();
  RolePlan plan;

  // --- node assignment ---------------------------------------------------
  std::vector<std::size_t> match_of(n, kUnmatched);
  std::vector<std::size_t> preimage_of(m, kUnmatched);
  if (n + m > 0) {
    const std::size_t dim = n + m;
    CostMatrix cost(dim, 0.0);
    double max_cell = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double c = t.path_cost(source.nodes[i].synset, target.nodes[j].synset)
                       .value;
        if (config.edge_augmented)
          c += 0.5 * label_assignment_cost(t, incident_labels(source, i),
                                           incident_labels(target, j));
        cost.at(i, j) = c;
        max_cell = std::max(max_cell, c);
      }
    std::vector<double> del(n), ins(m);
    for (std::size_t i = 0; i < n; ++i) {
      del[i] = t.depth(source.nodes[i].synset);
      if (config.edge_augmented)
        del[i] += 0.5 * kRoleDeletionCost * incident_labels(source, i).size();
      max_cell = std::max(max_cell, del[i]);
    }
    for (std::size_t j = 0; j < m; ++j) {
      ins[j] = t.depth(target.nodes[j].synset);
      if (config.edge_augmented)
        ins[j] += 0.5 * kRoleInsertionCost * incident_labels(target, j).size();
      max_cell = std::max(max_cell, ins[j]);
    }
    const double forbidden = max_cell * dim + 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cost.at(i, m + j) = i == j ? del[i] : forbidden;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        cost.at(n + i, j) = i == j ? ins[i] : forbidden;

    const Assignment assignment = solve_assignment(cost);
    for (std::size_t i = 0; i < n; ++i)
      if (assignment.column_of_row[i] < m) {
        match_of[i] = assignment.column_of_row[i];
        preimage_of[match_of[i]] = i;
      }
  }

  double node_insert_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (match_of[i] == kUnmatched) {
      plan.deleted_nodes.push_back(i);
      plan.node_plan_cost += t.depth(source.nodes[i].synset);
    } else {
      const double sub =
          t.path_cost(source.nodes[i].synset, target.nodes[match_of[i]].synset)
              .value;
      plan.node_matching.push_back({i, match_of[i], sub});
      plan.node_plan_cost += sub;
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    if (preimage_of[j] == kUnmatched) {
      plan.inserted_nodes.push_back(j);
      node_insert_cost += t.depth(target.nodes[j].synset);
    }

  // --- edge resolution ---------------------------------------------------
  // One slot per source edge; inserts are appended afterwards.
  std::vector<std::optional<RoleEdit>> by_source(source.edges.size());
  std::vector<char> target_consumed(target.edges.size(), 0);

  // Pass 1: collateral deletes, and grouping by matched endpoint pair.
  std::vector<std::pair<std::size_t, std::size_t>> group_order;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>
      group_sources;
  for (std::size_t k = 0; k < source.edges.size(); ++k) {
    const auto& e = source.edges[k];
    if (match_of[e.head] == kUnmatched || match_of[e.tail] == kUnmatched) {
      by_source[k] = RoleEdit{EditKind::Delete, k, std::nullopt,
                              RoleCause::Collateral, kRoleDeletionCost};
      continue;
    }
    const std::pair<std::size_t, std::size_t> group{match_of[e.head],
                                                    match_of[e.tail]};
    auto [it, fresh] = group_sources.try_emplace(group);
    if (fresh) group_order.push_back(group);
    it->second.push_back(k);
  }

  // Pass 2: within each endpoint group, consume zero-cost roles as correct,
  // then pair the remainder greedily by ascending substitution cost (ties by
  // input order); sources left over are hallucinated roles.
  for (const auto& group : group_order) {
    std::vector<std::size_t> pending = group_sources.at(group);
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < target.edges.size(); ++k)
      if (!target_consumed[k] && target.edges[k].head == group.first &&
          target.edges[k].tail == group.second)
        candidates.push_back(k);

    for (auto it = pending.begin(); it != pending.end();) {
      bool consumed = false;
      for (std::size_t c = 0; c < candidates.size() && !consumed; ++c) {
        const std::size_t k = candidates[c];
        if (target_consumed[k]) continue;
        if (role_substitution_cost(t, source.edges[*it].role,
                                   target.edges[k].role) == 0.0) {
          plan.correct_roles.emplace_back(*it, k);
          target_consumed[k] = 1;
          consumed = true;
        }
      }
      it = consumed ? pending.erase(it) : it + 1;
    }

    struct Candidate {
      double cost;
      std::size_t source_edge;
      std::size_t target_edge;
    };
    std::vector<Candidate> pairs;
    for (std::size_t s : pending)
      for (std::size_t k : candidates)
        if (!target_consumed[k])
          pairs.push_back({role_substitution_cost(t, source.edges[s].role,
                                                  target.edges[k].role),
                          s, k});
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.cost < b.cost;
                     });
    for (const auto& p : pairs) {
      if (by_source[p.source_edge] || target_consumed[p.target_edge]) continue;
      by_source[p.source_edge] =
          RoleEdit{EditKind::Replace, p.source_edge, p.target_edge,
                   RoleCause::PostHocReplacement, p.cost};
      target_consumed[p.target_edge] = 1;
    }
    for (std::size_t s : pending)
      if (!by_source[s])
        by_source[s] = RoleEdit{EditKind::Delete, s, std::nullopt,
                                RoleCause::HallucinatedRole, kRoleDeletionCost};
  }

  // Pass 3: a hallucinated-role delete whose label survives verbatim on an
  // unconsumed target edge sharing an endpoint slot with the matched pair is
  // really a replacement: the role stayed, one object under it changed. The
  // merged edit carries the delete+insert charge it stands for, keeping the
  // objective intact.
  for (std::size_t k = 0; k < source.edges.size(); ++k) {
    if (!by_source[k] || by_source[k]->cause != RoleCause::HallucinatedRole)
      continue;
    const auto& e = source.edges[k];
    const std::size_t head_image = match_of[e.head];
    const std::size_t tail_image = match_of[e.tail];
    for (std::size_t c = 0; c < target.edges.size(); ++c) {
      if (target_consumed[c]) continue;
      const auto& te = target.edges[c];
      if (te.head != head_image && te.tail != tail_image) continue;
      if (role_substitution_cost(t, e.role, te.role) != 0.0) continue;
      by_source[k] = RoleEdit{EditKind::Replace, k, c,
                              RoleCause::PostHocReplacement,
                              kRoleDeletionCost + kRoleInsertionCost};
      target_consumed[c] = 1;
      break;
    }
  }

  for (auto& slot : by_source)
    if (slot) plan.role_edits.push_back(*slot);
  for (std::size_t k = 0; k < target.edges.size(); ++k)
    if (!target_consumed[k])
      plan.role_edits.push_back(RoleEdit{EditKind::Insert, std::nullopt, k,
                                         RoleCause::UncoveredTarget,
                                         kRoleInsertionCost});

  double role_cost = 0.0;
  double role_insert_cost = 0.0;
  for (const auto& e : plan.role_edits)
    (e.kind == EditKind::Insert ? role_insert_cost : role_cost) += e.cost;
  plan.ged_cost = plan.node_plan_cost + role_cost;
  plan.objective_with_inserts =
      plan.ged_cost + node_insert_cost + role_insert_cost;
  return plan;
}

double exact_ged(const Taxonomy& t, const SceneGraph& source,
                 const SceneGraph& target, std::size_t node_limit) {
  require_mapped(source, "source");
  require_mapped(target, "target");
  const std::size_t n = source.nodes.size();
  const std::size_t m = target.nodes.size();
  if (n > node_limit || m > node_limit)
    throw std::invalid_argument("exact_ged: graph exceeds the node limit of " +
                                std::to_string(node_limit));

  std::vector<std::size_t> match_of(n, kUnmatched);
  std::vector<std::size_t> preimage_of(m, kUnmatched);
  double best = std::numeric_limits<double>::infinity();

  auto recurse = [&](auto&& self, std::size_t i, double node_cost) -> void {
    if (i == n) {
      double total = node_cost;
      for (std::size_t j = 0; j < m; ++j)
        if (preimage_of[j] == kUnmatched)
          total += t.depth(target.nodes[j].synset);
      total += edge_cost_for_matching(t, source, target, match_of, preimage_of);
      best = std::min(best, total);
      return;
    }
    self(self, i + 1, node_cost + t.depth(source.nodes[i].synset));
    for (std::size_t j = 0; j < m; ++j) {
      if (preimage_of[j] != kUnmatched) continue;
      match_of[i] = j;
      preimage_of[j] = i;
      self(self, i + 1,
           node_cost +
               t.path_cost(source.nodes[i].synset, target.nodes[j].synset)
                   .value);
      match_of[i] = kUnmatched;
      preimage_of[j] = kUnmatched;
    }
  };
  recurse(recurse, 0, 0.0);
  return best;
}

} // namespace halcece

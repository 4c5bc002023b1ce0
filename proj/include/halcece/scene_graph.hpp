#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "halcece/taxonomy.hpp"

namespace halcece {

struct SceneNode {
  SynsetIndex synset = kNoSynset;
  std::string surface;     // raw input form, for explanations
  std::string lemma;       // normalized form used for endpoint lookup
};

/// Directed labelled edge between node indices. Parallel edges are legal;
/// a scene graph is a multigraph.
struct SceneEdge {
  std::size_t head = 0;
  std::size_t tail = 0;
  std::string role;        // normalized label ("on", "next to", "riding")
};

struct SceneGraph {
  std::vector<SceneNode> nodes;
  std::vector<SceneEdge> edges;
};

}  // namespace halcece

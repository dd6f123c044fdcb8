#pragma once

#include <string>
#include <vector>

#include "attsp/attitude.hpp"
#include "attsp/corpus.hpp"

namespace attsp {

enum class GraphKind { mention, retweet };

struct GraphNode {
  std::string user_id;
  AttitudeScore attitude;
  bool attitude_valid = false;  // false for users absent from the model
};

struct GraphEdge {
  int source = 0;
  int target = 0;
  int weight = 1;
};

struct InteractionGraph {
  GraphKind kind = GraphKind::mention;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  int node_index(const std::string& user_id) const;
};

InteractionGraph build_mention_graph(const std::vector<RawPost>& posts);
InteractionGraph build_retweet_graph(const std::vector<RawPost>& posts);

// Copies attitude scores from the model onto matching nodes; others keep
// (0,0) with attitude_valid = false.
void attach_attitudes(InteractionGraph& graph, const FactorModel& model);

// Induced subgraph on the largest strongly connected node set; ties broken
// by the lexicographically smallest sorted id set.
InteractionGraph largest_scc(const InteractionGraph& graph);

enum class NodeAttribute { empathy, threat, tendency };

struct AssortativityResult {
  NodeAttribute attribute = NodeAttribute::tendency;
  double coefficient = 0.0;
  int n_edges = 0;
};

struct AssortativityOptions {
  bool weighted = false;  // repeat each edge pair weight times
};

// Pearson correlation of (source attribute, target attribute) over directed
// edges; edges touching an attitude-invalid node are skipped.
AssortativityResult assortativity(const InteractionGraph& graph,
                                  NodeAttribute attribute,
                                  const AssortativityOptions& opts = {});

// CSV "source,target,weight,source_tendency,source_group".
void save_edge_list_csv(const InteractionGraph& graph,
                        const std::string& path);

}  // namespace attsp

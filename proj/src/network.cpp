#include "attsp/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "attsp/errors.hpp"
#include "attsp/io_util.hpp"

namespace attsp {

namespace {

InteractionGraph build_graph(
    const std::map<std::pair<std::string, std::string>, int>& weights,
    const std::set<std::string>& users, GraphKind kind) {
  InteractionGraph g;
  g.kind = kind;
  std::unordered_map<std::string, int> index;
  for (const auto& u : users) {
    index[u] = static_cast<int>(g.nodes.size());
    g.nodes.push_back({u, {}, false});
  }
  for (const auto& [pair, w] : weights) {
    g.edges.push_back({index.at(pair.first), index.at(pair.second), w});
  }
  return g;
}

}  // namespace

int InteractionGraph::node_index(const std::string& user_id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].user_id == user_id) return static_cast<int>(i);
  }
  return -1;
}

InteractionGraph build_mention_graph(const std::vector<RawPost>& posts) {
  std::map<std::pair<std::string, std::string>, int> weights;
  std::set<std::string> users;
  for (const auto& p : posts) {
    users.insert(p.author_id);
    std::set<std::string> mentioned(p.mentioned_author_ids.begin(),
                                    p.mentioned_author_ids.end());
    for (const auto& m : mentioned) {
      if (m == p.author_id) continue;  // self-mention
      users.insert(m);
      weights[{p.author_id, m}] += 1;
    }
  }
  return build_graph(weights, users, GraphKind::mention);
}

InteractionGraph build_retweet_graph(const std::vector<RawPost>& posts) {
  std::map<std::pair<std::string, std::string>, int> weights;
  std::set<std::string> users;
  for (const auto& p : posts) {
    users.insert(p.author_id);
    if (p.kind != PostKind::retweet || !p.retweeted_author_id) continue;
    const std::string& orig = *p.retweeted_author_id;
    if (orig == p.author_id) continue;
    users.insert(orig);
    weights[{p.author_id, orig}] += 1;
  }
  return build_graph(weights, users, GraphKind::retweet);
}

void attach_attitudes(InteractionGraph& graph, const FactorModel& model) {
  std::unordered_map<std::string, int> row;
  for (std::size_t i = 0; i < model.users.size(); ++i) {
    row[model.users[i]] = static_cast<int>(i);
  }
  for (auto& node : graph.nodes) {
    auto it = row.find(node.user_id);
    if (it == row.end()) {
      node.attitude = {0.0, 0.0};
      node.attitude_valid = false;
    } else {
      node.attitude = {model.user_attitudes(it->second, 0),
                       model.user_attitudes(it->second, 1)};
      node.attitude_valid = true;
    }
  }
}

InteractionGraph largest_scc(const InteractionGraph& graph) {
  if (graph.nodes.empty()) throw EmptyGraph("largest_scc on an empty graph");
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : graph.edges) adj[e.source].push_back(e.target);

  // iterative Tarjan
  std::vector<int> comp(n, -1), dfn(n, -1), low(n, 0), stk, frame_v, frame_i;
  std::vector<bool> on_stack(n, false);
  int time = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (dfn[root] != -1) continue;
    frame_v.push_back(root);
    frame_i.push_back(0);
    dfn[root] = low[root] = time++;
    stk.push_back(root);
    on_stack[root] = true;
    while (!frame_v.empty()) {
      int v = frame_v.back();
      if (frame_i.back() < static_cast<int>(adj[v].size())) {
        int w = adj[v][frame_i.back()++];
        if (dfn[w] == -1) {
          dfn[w] = low[w] = time++;
          stk.push_back(w);
          on_stack[w] = true;
          frame_v.push_back(w);
          frame_i.push_back(0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], dfn[w]);
        }
      } else {
        if (low[v] == dfn[v]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        frame_v.pop_back();
        frame_i.pop_back();
        if (!frame_v.empty()) {
          low[frame_v.back()] = std::min(low[frame_v.back()], low[v]);
        }
      }
    }
  }

  std::vector<std::vector<int>> members(ncomp);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);

  int best = 0;
  auto ids_of = [&](int c) {
    std::vector<std::string> ids;
    for (int v : members[c]) ids.push_back(graph.nodes[v].user_id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  std::vector<std::string> best_ids = ids_of(0);
  for (int c = 1; c < ncomp; ++c) {
    if (members[c].size() < members[best].size()) continue;
    auto ids = ids_of(c);
    if (members[c].size() > members[best].size() || ids < best_ids) {
      best = c;
      best_ids = std::move(ids);
    }
  }

  InteractionGraph sub;
  sub.kind = graph.kind;
  std::vector<int> remap(n, -1);
  for (int v : members[best]) {
    remap[v] = static_cast<int>(sub.nodes.size());
    sub.nodes.push_back(graph.nodes[v]);
  }
  for (const auto& e : graph.edges) {
    if (remap[e.source] != -1 && remap[e.target] != -1) {
      sub.edges.push_back({remap[e.source], remap[e.target], e.weight});
    }
  }
  return sub;
}

AssortativityResult assortativity(const InteractionGraph& graph,
                                  NodeAttribute attribute,
                                  const AssortativityOptions& opts) {
  if (graph.nodes.empty()) throw EmptyGraph("assortativity on an empty graph");
  auto value = [&](const GraphNode& node) {
    switch (attribute) {
      case NodeAttribute::empathy: return node.attitude.empathy;
      case NodeAttribute::threat: return node.attitude.threat;
      case NodeAttribute::tendency: return tendency(node.attitude);
    }
    return 0.0;
  };
  std::vector<double> xs, ys;
  for (const auto& e : graph.edges) {
    const auto& s = graph.nodes[e.source];
    const auto& t = graph.nodes[e.target];
    if (!s.attitude_valid || !t.attitude_valid) continue;
    const int reps = opts.weighted ? e.weight : 1;
    for (int r = 0; r < reps; ++r) {
      xs.push_back(value(s));
      ys.push_back(value(t));
    }
  }
  const std::size_t m = xs.size();
  if (m < 2)
    throw DegenerateAttribute("assortativity needs at least two edge pairs");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateAttribute("constant endpoint attribute sequence");
  return {attribute, sxy / std::sqrt(sxx * syy), static_cast<int>(m)};
}

void save_edge_list_csv(const InteractionGraph& graph,
                        const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back(
      {"source", "target", "weight", "source_tendency", "source_group"});
  for (const auto& e : graph.edges) {
    const auto& s = graph.nodes[e.source];
    const double tend = tendency(s.attitude);
    rows.push_back({s.user_id, graph.nodes[e.target].user_id,
                    std::to_string(e.weight), format_double(tend),
                    tend >= 0 ? "empathy" : "threat"});
  }
  write_csv(rows, path);
}

}  // namespace attsp

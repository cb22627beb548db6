#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fogsim {

using NodeId = int;

/// Custom node tags are untyped scalars or strings; the engine never
/// interprets them.
using AttrValue = std::variant<double, std::string>;
using AttrMap = std::map<std::string, AttrValue>;

struct NodeAttrs {
  NodeId id = 0;
  double ipt = 0;  // instructions per time unit
  double ram = 0;  // abstract units, stored but never enforced
  AttrMap custom;
};

struct LinkAttrs {
  NodeId a = 0;
  NodeId b = 0;
  double bw = 0;  // bytes per time unit
  double pr = 0;  // propagation delay
  AttrMap custom;
};

/// Unordered pair of endpoints, normalized so first <= second.
struct LinkKey {
  NodeId u;
  NodeId v;
  LinkKey(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}
  auto operator<=>(const LinkKey&) const = default;
};

/// Undirected attributed graph of network entities. Mutable during a run;
/// every mutation bumps the generation counter so cached paths can be
/// detected as stale.
class TopologyGraph {
 public:
  NodeId add_node(NodeAttrs attrs);
  /// Removes the node and all incident links; returns the removed link
  /// pairs so in-flight routes can be invalidated.
  std::vector<LinkKey> remove_node(NodeId id);
  void add_link(LinkAttrs attrs);
  void remove_link(NodeId a, NodeId b);

  bool has_node(NodeId id) const { return nodes_.count(id) > 0; }
  bool has_link(NodeId a, NodeId b) const { return links_.count(LinkKey(a, b)) > 0; }
  const NodeAttrs& node(NodeId id) const;
  const LinkAttrs& link(NodeId a, NodeId b) const;
  const std::map<NodeId, NodeAttrs>& nodes() const { return nodes_; }
  const std::map<LinkKey, LinkAttrs>& links() const { return links_; }
  /// Neighbor ids in ascending order.
  const std::vector<NodeId>& neighbors(NodeId id) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::uint64_t generation() const { return generation_; }

  /// Hop distance from src to every reachable node.
  std::map<NodeId, int> bfs_distances(NodeId src) const;

  /// All hop-count-minimal simple paths from src to dst, sorted
  /// lexicographically by node-id sequence. Empty when disconnected.
  std::vector<std::vector<NodeId>> shortest_paths(NodeId src, NodeId dst) const;

  /// The lexicographically smallest shortest path, without enumerating the
  /// full set. nullopt when disconnected.
  std::optional<std::vector<NodeId>> shortest_path_lex(NodeId src, NodeId dst) const;

  /// Standard shortest-path betweenness (Brandes), unweighted, normalized
  /// by 2/((n-1)(n-2)) for undirected graphs.
  std::map<NodeId, double> betweenness_centrality() const;

 private:
  std::map<NodeId, NodeAttrs> nodes_;
  std::map<LinkKey, LinkAttrs> links_;
  std::map<NodeId, std::vector<NodeId>> adjacency_;
  std::uint64_t generation_ = 0;
};

/// Parses the JSON topology document:
///   {"entity":[{"id":int,"IPT":num,"RAM":num, ...custom}],
///    "link":[{"s":int,"d":int,"BW":num,"PR":num}]}
/// Unknown node/link keys are preserved in the custom maps. Throws
/// std::runtime_error naming the offending element on schema violations.
TopologyGraph load_topology(const std::string& json_text);
TopologyGraph load_topology_file(const std::string& path);

/// Whitespace-separated edge list, one "s d BW PR" per line. Nodes are
/// created implicitly with ipt=1, ram=0. Lines starting with '#' are skipped.
TopologyGraph load_edge_list(std::istream& in);
TopologyGraph load_edge_list_file(const std::string& path);

}  // namespace fogsim

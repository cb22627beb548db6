#include "fogsim/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json_support.hpp"

namespace fogsim {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void insert_sorted(std::vector<NodeId>& v, NodeId id) {
  v.insert(std::lower_bound(v.begin(), v.end(), id), id);
}

void erase_value(std::vector<NodeId>& v, NodeId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it != v.end() && *it == id) v.erase(it);
}

}  // namespace

NodeId TopologyGraph::add_node(NodeAttrs attrs) {
  if (nodes_.count(attrs.id)) fail("add_node: duplicate node id " + std::to_string(attrs.id));
  const NodeId id = attrs.id;
  nodes_.emplace(id, std::move(attrs));
  adjacency_.emplace(id, std::vector<NodeId>{});
  ++generation_;
  return id;
}

std::vector<LinkKey> TopologyGraph::remove_node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail("remove_node: unknown node id " + std::to_string(id));
  std::vector<LinkKey> removed;
  for (NodeId nb : adjacency_.at(id)) {
    removed.emplace_back(id, nb);
  }
  for (const LinkKey& key : removed) {
    links_.erase(key);
    const NodeId other = key.u == id ? key.v : key.u;
    erase_value(adjacency_.at(other), id);
  }
  adjacency_.erase(id);
  nodes_.erase(it);
  ++generation_;
  return removed;
}

void TopologyGraph::add_link(LinkAttrs attrs) {
  if (!nodes_.count(attrs.a)) fail("add_link: unknown endpoint " + std::to_string(attrs.a));
  if (!nodes_.count(attrs.b)) fail("add_link: unknown endpoint " + std::to_string(attrs.b));
  if (attrs.a == attrs.b) fail("add_link: self-link on node " + std::to_string(attrs.a));
  LinkKey key(attrs.a, attrs.b);
  if (links_.count(key))
    fail("add_link: pair (" + std::to_string(key.u) + "," + std::to_string(key.v) + ") already linked");
  if (!(attrs.bw > 0)) fail("add_link: BW must be > 0 on (" + std::to_string(attrs.a) + "," + std::to_string(attrs.b) + ")");
  if (attrs.pr < 0) fail("add_link: PR must be >= 0 on (" + std::to_string(attrs.a) + "," + std::to_string(attrs.b) + ")");
  insert_sorted(adjacency_.at(attrs.a), attrs.b);
  insert_sorted(adjacency_.at(attrs.b), attrs.a);
  links_.emplace(key, std::move(attrs));
  ++generation_;
}

void TopologyGraph::remove_link(NodeId a, NodeId b) {
  LinkKey key(a, b);
  auto it = links_.find(key);
  if (it == links_.end())
    fail("remove_link: no link (" + std::to_string(a) + "," + std::to_string(b) + ")");
  links_.erase(it);
  erase_value(adjacency_.at(key.u), key.v);
  erase_value(adjacency_.at(key.v), key.u);
  ++generation_;
}

const NodeAttrs& TopologyGraph::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail("node: unknown node id " + std::to_string(id));
  return it->second;
}

const LinkAttrs& TopologyGraph::link(NodeId a, NodeId b) const {
  auto it = links_.find(LinkKey(a, b));
  if (it == links_.end())
    fail("link: no link (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return it->second;
}

const std::vector<NodeId>& TopologyGraph::neighbors(NodeId id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) fail("neighbors: unknown node id " + std::to_string(id));
  return it->second;
}

std::map<NodeId, int> TopologyGraph::bfs_distances(NodeId src) const {
  if (!has_node(src)) fail("bfs_distances: unknown node id " + std::to_string(src));
  std::map<NodeId, int> dist;
  dist[src] = 0;
  std::deque<NodeId> frontier{src};
  while (!frontier.empty()) {
    const NodeId cur = frontier.front();
    frontier.pop_front();
    const int d = dist.at(cur);
    for (NodeId nb : adjacency_.at(cur)) {
      if (!dist.count(nb)) {
        dist[nb] = d + 1;
        frontier.push_back(nb);
      }
    }
  }
  return dist;
}

std::vector<std::vector<NodeId>> TopologyGraph::shortest_paths(NodeId src, NodeId dst) const {
  if (!has_node(src)) fail("shortest_paths: unknown node id " + std::to_string(src));
  if (!has_node(dst)) fail("shortest_paths: unknown node id " + std::to_string(dst));
  if (src == dst) return {{src}};

  const auto dist = bfs_distances(src);
  auto dit = dist.find(dst);
  if (dit == dist.end()) return {};
  const int target = dit->second;

  // walk the BFS layer DAG from src, collecting every minimal path
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> path{src};
  std::function<void(NodeId)> walk = [&](NodeId cur) {
    if (cur == dst) {
      out.push_back(path);
      return;
    }
    const int d = dist.at(cur);
    if (d == target) return;
    for (NodeId nb : adjacency_.at(cur)) {
      auto nit = dist.find(nb);
      if (nit != dist.end() && nit->second == d + 1) {
        path.push_back(nb);
        walk(nb);
        path.pop_back();
      }
    }
  };
  walk(src);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<NodeId>> TopologyGraph::shortest_path_lex(NodeId src, NodeId dst) const {
  if (!has_node(src)) fail("shortest_path_lex: unknown node id " + std::to_string(src));
  if (!has_node(dst)) fail("shortest_path_lex: unknown node id " + std::to_string(dst));
  if (src == dst) return std::vector<NodeId>{src};
  const auto dist_to_dst = bfs_distances(dst);
  auto sit = dist_to_dst.find(src);
  if (sit == dist_to_dst.end()) return std::nullopt;

  // greedy descent: at each step take the smallest-id neighbor one layer
  // closer to dst; this is the lexicographically smallest shortest path
  std::vector<NodeId> path{src};
  NodeId cur = src;
  int remaining = sit->second;
  while (cur != dst) {
    for (NodeId nb : adjacency_.at(cur)) {
      auto nit = dist_to_dst.find(nb);
      if (nit != dist_to_dst.end() && nit->second == remaining - 1) {
        cur = nb;
        break;
      }
    }
    --remaining;
    path.push_back(cur);
  }
  return path;
}

std::map<NodeId, double> TopologyGraph::betweenness_centrality() const {
  if (nodes_.empty()) fail("betweenness_centrality: empty graph");
  std::map<NodeId, double> score;
  for (const auto& [id, _] : nodes_) score[id] = 0.0;
  const std::size_t n = nodes_.size();
  if (n < 3) return score;

  // Brandes (2001), unweighted
  for (const auto& [s, _] : nodes_) {
    std::vector<NodeId> order;
    std::map<NodeId, std::vector<NodeId>> pred;
    std::map<NodeId, double> sigma;
    std::map<NodeId, int> dist;
    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<NodeId> frontier{s};
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop_front();
      order.push_back(v);
      for (NodeId w : adjacency_.at(v)) {
        auto it = dist.find(w);
        if (it == dist.end()) {
          dist[w] = dist[v] + 1;
          frontier.push_back(w);
          it = dist.find(w);
        }
        if (it->second == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    std::map<NodeId, double> delta;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : pred[w]) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) score[w] += delta[w];
    }
  }
  // each unordered pair was counted twice; fold the normalization in
  const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  for (auto& [_, v] : score) v *= scale;
  return score;
}

namespace {

using nlohmann::json;

AttrValue attr_from_json(const json& v) {
  if (v.is_number()) return AttrValue(v.get<double>());
  if (v.is_boolean()) return AttrValue(v.get<bool>() ? 1.0 : 0.0);
  if (v.is_string()) return AttrValue(v.get<std::string>());
  // nested structures (e.g. coordinate objects) are kept as compact JSON text
  return AttrValue(v.dump());
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    fail(where + ": missing mandatory attribute " + key);
  if (!obj.at(key).is_number())
    fail(where + ": attribute " + key + " must be a number");
  return obj.at(key).get<double>();
}

}  // namespace

TopologyGraph load_topology_json(const json& doc) {
  if (!doc.is_object()) fail("topology document: root must be an object");

  TopologyGraph g;
  if (doc.contains("entity")) {
    if (!doc.at("entity").is_array()) fail("/entity: must be an array");
    std::size_t i = 0;
    for (const auto& e : doc.at("entity")) {
      const std::string where = "/entity/" + std::to_string(i++);
      if (!e.is_object()) fail(where + ": must be an object");
      NodeAttrs attrs;
      if (!e.contains("id") || !e.at("id").is_number_integer())
        fail(where + ": missing mandatory attribute id");
      attrs.id = e.at("id").get<NodeId>();
      attrs.ipt = require_number(e, "IPT", where + " (node " + std::to_string(attrs.id) + ")");
      attrs.ram = require_number(e, "RAM", where + " (node " + std::to_string(attrs.id) + ")");
      for (auto it = e.begin(); it != e.end(); ++it) {
        if (it.key() == "id" || it.key() == "IPT" || it.key() == "RAM") continue;
        attrs.custom.emplace(it.key(), attr_from_json(it.value()));
      }
      if (g.has_node(attrs.id)) fail(where + ": duplicate node id " + std::to_string(attrs.id));
      g.add_node(std::move(attrs));
    }
  }
  if (doc.contains("link")) {
    if (!doc.at("link").is_array()) fail("/link: must be an array");
    std::size_t i = 0;
    for (const auto& l : doc.at("link")) {
      const std::string where = "/link/" + std::to_string(i++);
      if (!l.is_object()) fail(where + ": must be an object");
      LinkAttrs attrs;
      if (!l.contains("s") || !l.at("s").is_number_integer()) fail(where + ": missing endpoint s");
      if (!l.contains("d") || !l.at("d").is_number_integer()) fail(where + ": missing endpoint d");
      attrs.a = l.at("s").get<NodeId>();
      attrs.b = l.at("d").get<NodeId>();
      attrs.bw = require_number(l, "BW", where);
      attrs.pr = require_number(l, "PR", where);
      for (auto it = l.begin(); it != l.end(); ++it) {
        if (it.key() == "s" || it.key() == "d" || it.key() == "BW" || it.key() == "PR") continue;
        attrs.custom.emplace(it.key(), attr_from_json(it.value()));
      }
      if (!g.has_node(attrs.a))
        fail(where + ": link references unknown node id " + std::to_string(attrs.a));
      if (!g.has_node(attrs.b))
        fail(where + ": link references unknown node id " + std::to_string(attrs.b));
      g.add_link(std::move(attrs));
    }
  }
  return g;
}

TopologyGraph load_topology(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("topology document: ") + e.what());
  }
  return load_topology_json(doc);
}

TopologyGraph load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open topology file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_topology(buf.str());
}

TopologyGraph load_edge_list(std::istream& in) {
  TopologyGraph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    NodeId s, d;
    double bw, pr;
    if (!(ls >> s >> d >> bw >> pr))
      fail("edge list line " + std::to_string(lineno) + ": expected 's d BW PR'");
    if (!g.has_node(s)) g.add_node({s, 1.0, 0.0, {}});
    if (!g.has_node(d)) g.add_node({d, 1.0, 0.0, {}});
    g.add_link({s, d, bw, pr, {}});
  }
  return g;
}

TopologyGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open edge list file: " + path);
  return load_edge_list(in);
}

}  // namespace fogsim

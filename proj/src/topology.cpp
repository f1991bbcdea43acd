#include "szanr/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <queue>
#include <set>

#include <json.hpp>

#include "text_util.hpp"

namespace szanr {

using nlohmann::json;
using nlohmann::ordered_json;

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id.empty()) throw TopologyError("node with empty id");
    if (!std::isfinite(n.lat) || !std::isfinite(n.lon) || std::abs(n.lat) > 90.0)
      throw TopologyError("node '" + n.id + "' has an invalid position");
    if (!node_index_.emplace(n.id, i).second)
      throw TopologyError("duplicate node id '" + n.id + "'");
  }
  incident_.resize(nodes_.size());
  std::set<LinkId> link_ids;
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (l.id.empty()) throw TopologyError("link with empty id");
    if (!link_ids.insert(l.id).second)
      throw TopologyError("duplicate link id '" + l.id + "'");
    if (l.a == l.b) throw TopologyError("link '" + l.id + "' is a self-loop");
    const auto ia = node_index_.find(l.a);
    const auto ib = node_index_.find(l.b);
    if (ia == node_index_.end() || ib == node_index_.end())
      throw TopologyError("link '" + l.id + "' references a missing node");
    auto key = std::minmax(l.a, l.b);
    if (!pairs.insert(key).second)
      throw TopologyError("parallel link between '" + l.a + "' and '" + l.b + "'");
    if (!(l.length_km > 0.0) || !std::isfinite(l.length_km))
      throw TopologyError("link '" + l.id + "' must have positive length");
    incident_[ia->second].push_back(i);
    incident_[ib->second].push_back(i);
  }
}

bool Topology::has_node(const NodeId& id) const {
  return node_index_.count(id) != 0;
}

const Node& Topology::node(const NodeId& id) const {
  return nodes_[node_index(id)];
}

std::size_t Topology::node_index(const NodeId& id) const {
  const auto it = node_index_.find(id);
  if (it == node_index_.end()) throw TopologyError("unknown node '" + id + "'");
  return it->second;
}

const std::vector<std::size_t>& Topology::incident_links(const NodeId& id) const {
  return incident_[node_index(id)];
}

std::optional<std::size_t> Topology::find_link(const NodeId& a,
                                               const NodeId& b) const {
  const auto it = node_index_.find(a);
  if (it == node_index_.end()) return std::nullopt;
  for (std::size_t li : incident_[it->second]) {
    const Link& l = links_[li];
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return li;
  }
  return std::nullopt;
}

double plane_distance_km(const Node& a, const Node& b, const GridSpec& spec) {
  const PlanePoint pa = project(a.lat, a.lon, spec);
  const PlanePoint pb = project(b.lat, b.lon, spec);
  return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

double total_link_length(const Topology& t) {
  double sum = 0.0;
  for (const Link& l : t.links()) sum += l.length_km;
  return sum;
}

bool is_connected(const Topology& t) {
  const auto& nodes = t.nodes();
  if (nodes.size() <= 1) return true;
  std::vector<bool> seen(nodes.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t li : t.incident_links(nodes[u].id)) {
      const Link& l = t.link(li);
      const std::size_t v = t.node_index(l.a == nodes[u].id ? l.b : l.a);
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == nodes.size();
}

namespace {

struct AdjEntry {
  std::size_t to;
  std::size_t link;
  double w;
};

// Shortest path start -> dst avoiding banned nodes/links; among
// equal-length paths, the lexicographically smallest node-id sequence.
// Dijkstra runs from dst so the result can be built by a greedy forward
// walk that always picks the smallest qualifying neighbor id.
std::optional<std::vector<std::size_t>> lex_shortest_path(
    const Topology& t, const std::vector<std::vector<AdjEntry>>& adj,
    std::size_t start, std::size_t dst, const std::vector<bool>& banned_node,
    const std::vector<bool>& banned_link) {
  const std::size_t n = t.nodes().size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<bool> done(n, false);
  using QE = std::pair<double, std::size_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  dist[dst] = 0.0;
  pq.emplace(0.0, dst);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    for (const AdjEntry& e : adj[u]) {
      if (banned_node[e.to] || banned_link[e.link] || done[e.to]) continue;
      const double nd = dist[u] + e.w;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        pq.emplace(nd, e.to);
      }
    }
  }
  if (dist[start] == kInf) return std::nullopt;

  std::vector<std::size_t> path{start};
  std::size_t cur = start;
  while (cur != dst) {
    std::optional<std::size_t> best;
    for (const AdjEntry& e : adj[cur]) {
      if (banned_node[e.to] || banned_link[e.link]) continue;
      // Same operand order as the relaxation above, so the Dijkstra
      // parent always qualifies bit-exactly.
      if (dist[e.to] + e.w == dist[cur]) {
        if (!best || t.nodes()[e.to].id < t.nodes()[*best].id) best = e.to;
      }
    }
    if (!best) return std::nullopt;  // defensive; positive weights guarantee progress
    path.push_back(*best);
    cur = *best;
  }
  return path;
}

double path_length_along(const Topology& t, const std::vector<std::size_t>& path) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto li =
        t.find_link(t.nodes()[path[i]].id, t.nodes()[path[i + 1]].id);
    sum += t.link(*li).length_km;
  }
  return sum;
}

std::vector<NodeId> to_ids(const Topology& t, const std::vector<std::size_t>& path) {
  std::vector<NodeId> ids;
  ids.reserve(path.size());
  for (std::size_t i : path) ids.push_back(t.nodes()[i].id);
  return ids;
}

struct CandidateOrder {
  bool operator()(const std::pair<double, std::vector<NodeId>>& a,
                  const std::pair<double, std::vector<NodeId>>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  }
};

}  // namespace

std::vector<Path> k_shortest_paths(const Topology& t, const NodeId& src,
                                   const NodeId& dst, int k) {
  if (k < 1) throw TopologyError("k must be at least 1");
  if (src == dst) throw TopologyError("source and destination must differ");
  const std::size_t si = t.node_index(src);
  const std::size_t di = t.node_index(dst);

  const std::size_t n = t.nodes().size();
  std::vector<std::vector<AdjEntry>> adj(n);
  for (std::size_t li = 0; li < t.links().size(); ++li) {
    const Link& l = t.links()[li];
    const std::size_t ia = t.node_index(l.a);
    const std::size_t ib = t.node_index(l.b);
    adj[ia].push_back({ib, li, l.length_km});
    adj[ib].push_back({ia, li, l.length_km});
  }

  std::vector<std::vector<std::size_t>> found;       // accepted paths, in order
  std::set<std::vector<NodeId>> found_ids;
  std::set<std::pair<double, std::vector<NodeId>>, CandidateOrder> candidates;
  std::map<std::vector<NodeId>, std::vector<std::size_t>> candidate_paths;

  std::vector<bool> no_nodes(n, false), no_links(t.links().size(), false);
  const auto first = lex_shortest_path(t, adj, si, di, no_nodes, no_links);
  if (!first) return {};
  found.push_back(*first);
  found_ids.insert(to_ids(t, *first));

  while (static_cast<int>(found.size()) < k) {
    const std::vector<std::size_t>& prev = found.back();
    std::vector<bool> banned_node(n, false);
    std::vector<bool> banned_link(t.links().size(), false);
    for (std::size_t spur = 0; spur + 1 < prev.size(); ++spur) {
      std::fill(banned_node.begin(), banned_node.end(), false);
      std::fill(banned_link.begin(), banned_link.end(), false);
      // Ban the next edge of every found path sharing this root prefix.
      for (const auto& p : found) {
        if (p.size() > spur + 1 &&
            std::equal(prev.begin(), prev.begin() + spur + 1, p.begin())) {
          const auto li = t.find_link(t.nodes()[p[spur]].id, t.nodes()[p[spur + 1]].id);
          banned_link[*li] = true;
        }
      }
      for (std::size_t i = 0; i < spur; ++i) banned_node[prev[i]] = true;

      const auto spur_path =
          lex_shortest_path(t, adj, prev[spur], di, banned_node, banned_link);
      if (!spur_path) continue;
      std::vector<std::size_t> full(prev.begin(), prev.begin() + spur);
      full.insert(full.end(), spur_path->begin(), spur_path->end());
      auto ids = to_ids(t, full);
      if (found_ids.count(ids) || candidate_paths.count(ids)) continue;
      const double len = path_length_along(t, full);
      candidates.emplace(len, ids);
      candidate_paths.emplace(std::move(ids), std::move(full));
    }
    if (candidates.empty()) break;
    const auto best = *candidates.begin();
    candidates.erase(candidates.begin());
    auto it = candidate_paths.find(best.second);
    found.push_back(it->second);
    found_ids.insert(best.second);
    candidate_paths.erase(it);
  }

  std::vector<Path> out;
  out.reserve(found.size());
  for (const auto& p : found)
    out.push_back({to_ids(t, p), path_length_along(t, p)});
  return out;
}

Topology rebuild_with_positions(const Topology& t,
                                const std::map<NodeId, GeoPoint>& moves,
                                const GridSpec& spec) {
  for (const auto& [id, pos] : moves) {
    (void)pos;
    if (!t.has_node(id)) throw TopologyError("unknown node '" + id + "' in moves");
  }
  std::vector<Node> nodes = t.nodes();
  for (Node& n : nodes) {
    const auto it = moves.find(n.id);
    if (it != moves.end()) {
      n.lat = it->second.lat;
      n.lon = it->second.lon;
    }
  }
  std::vector<Link> links = t.links();
  for (Link& l : links) {
    if (moves.count(l.a) || moves.count(l.b)) {
      const Node& na = nodes[t.node_index(l.a)];
      const Node& nb = nodes[t.node_index(l.b)];
      l.length_km = plane_distance_km(na, nb, spec);
      l.explicit_length = false;
    }
  }
  return Topology(std::move(nodes), std::move(links));
}

namespace {

long line_of_byte(const std::string& text, std::size_t byte) {
  long line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

Topology load_topology(const std::string& path, const GridSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open topology file: " + path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path, line_of_byte(text, e.byte), e.what());
  }

  std::vector<Node> nodes;
  std::vector<Link> links;
  try {
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("links"))
      throw Error("topology file must contain 'nodes' and 'links' arrays");
    for (const auto& jn : doc.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<std::string>();
      n.name = jn.value("name", n.id);
      n.lat = jn.at("lat").get<double>();
      n.lon = jn.at("lon").get<double>();
      n.is_border = jn.value("is_border", false);
      nodes.push_back(std::move(n));
    }
    for (const auto& jl : doc.at("links")) {
      Link l;
      l.id = jl.at("id").get<std::string>();
      l.a = jl.at("a").get<std::string>();
      l.b = jl.at("b").get<std::string>();
      if (jl.contains("length_km")) {
        l.length_km = jl.at("length_km").get<double>();
        l.explicit_length = true;
      }
      links.push_back(std::move(l));
    }
  } catch (const json::exception& e) {
    throw ParseError(path, 0, std::string("bad topology document: ") + e.what());
  }

  // Missing lengths come from the plane geometry.
  std::map<NodeId, const Node*> by_id;
  for (const Node& n : nodes) by_id[n.id] = &n;
  for (Link& l : links) {
    if (!l.explicit_length) {
      const auto a = by_id.find(l.a);
      const auto b = by_id.find(l.b);
      if (a == by_id.end() || b == by_id.end())
        throw ParseError(path, 0, "link '" + l.id + "' references a missing node");
      l.length_km = plane_distance_km(*a->second, *b->second, spec);
    }
  }
  try {
    return Topology(std::move(nodes), std::move(links));
  } catch (const TopologyError& e) {
    throw ParseError(path, 0, e.what());
  }
}

void save_topology(const Topology& t, const std::string& path) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const Node& n : t.nodes()) {
    ordered_json jn;
    jn["id"] = n.id;
    jn["name"] = n.name;
    jn["lat"] = n.lat;
    jn["lon"] = n.lon;
    jn["is_border"] = n.is_border;
    doc["nodes"].push_back(std::move(jn));
  }
  doc["links"] = ordered_json::array();
  for (const Link& l : t.links()) {
    ordered_json jl;
    jl["id"] = l.id;
    jl["a"] = l.a;
    jl["b"] = l.b;
    jl["length_km"] = l.length_km;
    doc["links"].push_back(std::move(jl));
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write topology file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace szanr

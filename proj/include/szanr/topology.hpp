#ifndef SZANR_TOPOLOGY_HPP
#define SZANR_TOPOLOGY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "szanr/geo_grid.hpp"

namespace szanr {

using NodeId = std::string;
using LinkId = std::string;

struct Node {
  NodeId id;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  bool is_border = false;  // periphery node, candidate submarine-cable landing
};

struct Link {
  LinkId id;
  NodeId a;
  NodeId b;
  double length_km = 0.0;
  bool explicit_length = false;  // length came from the input file, not geometry
};

// Immutable snapshot of the optical backbone graph. Node and link order
// is preserved from construction; all derived iteration is deterministic.
class Topology {
public:
  Topology(std::vector<Node> nodes, std::vector<Link> links);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  bool has_node(const NodeId& id) const;
  const Node& node(const NodeId& id) const;          // throws TopologyError
  std::size_t node_index(const NodeId& id) const;    // throws TopologyError
  const Link& link(std::size_t index) const { return links_[index]; }

  // Indices into links() for all links incident to a node.
  const std::vector<std::size_t>& incident_links(const NodeId& id) const;

  std::optional<std::size_t> find_link(const NodeId& a, const NodeId& b) const;

private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::map<NodeId, std::size_t> node_index_;
  std::vector<std::vector<std::size_t>> incident_;  // per node index
};

struct Path {
  std::vector<NodeId> nodes;
  double length_km = 0.0;
};

double plane_distance_km(const Node& a, const Node& b, const GridSpec& spec);

double total_link_length(const Topology& t);

bool is_connected(const Topology& t);

// Loop-free paths sorted by (total length, lexicographic node sequence).
// Returns fewer than k when fewer simple paths exist; empty when src and
// dst are disconnected. Throws TopologyError on src == dst or unknown ids.
std::vector<Path> k_shortest_paths(const Topology& t, const NodeId& src,
                                   const NodeId& dst, int k);

// New topology with identical adjacency; moved nodes take the given
// positions and the lengths of their incident links are recomputed.
Topology rebuild_with_positions(const Topology& t,
                                const std::map<NodeId, GeoPoint>& moves,
                                const GridSpec& spec);

// Topology JSON: {"nodes": [{id,name,lat,lon,is_border}...],
//                 "links": [{id,a,b,length_km?}...]}
// Links without length_km get the plane distance between endpoints.
Topology load_topology(const std::string& path, const GridSpec& spec);
void save_topology(const Topology& t, const std::string& path);

}  // namespace szanr

#endif  // SZANR_TOPOLOGY_HPP

#include "szanr/relocation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace szanr {

using nlohmann::ordered_json;

bool PlanAudit::all_pass() const {
  if (!llc.pass || !consistency.pass) return false;
  for (const MoveAudit& m : moves)
    if (!m.nssc.pass || !m.lmbc.pass || !m.zone.pass) return false;
  return true;
}

bool is_periphery_cell(const SeismicGrid& grid, const Cell& cell) {
  const GridSpec& spec = grid.spec();
  if (!in_grid(cell, spec))
    throw OutOfGridError("periphery query outside grid");
  if (cell.row <= 1 || cell.col <= 1 || cell.row >= spec.rows - 2 ||
      cell.col >= spec.cols - 2)
    return true;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc)
      if (is_no_data(grid.zone_at(cell.row + dr, cell.col + dc))) return true;
  return false;
}

Cell node_cell(const Node& node, const GridSpec& spec) {
  return cell_of(project(node.lat, node.lon, spec), spec);
}

std::vector<CandidateCell> candidate_cells(const Node& node,
                                           const SeismicGrid& grid,
                                           const std::set<Cell>& occupied_by_others,
                                           const RelocationConfig& cfg) {
  if (cfg.search_half_width < 0)
    throw Error("search_half_width must be non-negative");
  const GridSpec& spec = grid.spec();
  const Cell home = node_cell(node, spec);

  std::vector<CandidateCell> out;
  const int hw = cfg.search_half_width;
  for (int r = home.row - hw; r <= home.row + hw; ++r) {
    for (int c = home.col - hw; c <= home.col + hw; ++c) {
      const Cell cell{r, c};
      if (!in_grid(cell, spec)) continue;
      const ZoneLevel z = grid.zone_at(cell);
      if (is_no_data(z)) continue;
      if (occupied_by_others.count(cell)) continue;
      out.push_back({cell, z, chebyshev_distance(home, cell)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateCell& a, const CandidateCell& b) {
              if (a.zone != b.zone) return zone_rank(a.zone) < zone_rank(b.zone);
              if (a.chebyshev != b.chebyshev) return a.chebyshev < b.chebyshev;
              return a.cell < b.cell;
            });
  return out;
}

namespace {

// Total length with the lengths of one node's incident links replaced,
// summed in link order so the result is bit-identical to
// total_link_length on the adopted topology.
double tentative_total(const std::vector<double>& lengths,
                       const std::map<std::size_t, double>& replaced) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const auto it = replaced.find(i);
    sum += (it != replaced.end()) ? it->second : lengths[i];
  }
  return sum;
}

}  // namespace

std::pair<Topology, RelocationPlan> relocate(const Topology& t,
                                             const SeismicGrid& grid,
                                             const RelocationConfig& cfg) {
  const GridSpec& spec = grid.spec();
  if (!is_connected(t)) throw TopologyError("relocation requires a connected topology");

  // Current cell and zone per node; throws when a node is off-grid.
  std::map<NodeId, Cell> cells;
  std::map<NodeId, ZoneLevel> zones;
  for (const Node& n : t.nodes()) {
    const Cell c = node_cell(n, spec);
    cells[n.id] = c;
    zones[n.id] = grid.zone_at(c);
  }

  std::vector<NodeId> order;
  for (const Node& n : t.nodes()) order.push_back(n.id);
  std::sort(order.begin(), order.end(), [&](const NodeId& a, const NodeId& b) {
    if (cfg.node_order == NodeOrder::SeverityDesc) {
      const int za = zone_rank(zones[a]);
      const int zb = zone_rank(zones[b]);
      if (za != zb) return za > zb;
    }
    return a < b;
  });

  const double original_total = total_link_length(t);

  // Working state: positions, per-link lengths, occupied cells.
  std::map<NodeId, GeoPoint> position;
  for (const Node& n : t.nodes()) position[n.id] = {n.lat, n.lon};
  std::vector<double> lengths;
  for (const Link& l : t.links()) lengths.push_back(l.length_km);
  std::multiset<Cell> occupied;
  for (const auto& [id, c] : cells) occupied.insert(c);

  RelocationPlan plan;
  plan.llc_before = original_total;

  for (const NodeId& id : order) {
    const Node& node = t.node(id);
    const Cell old_cell = cells[id];
    const ZoneLevel old_zone = zones[id];

    std::multiset<Cell> others = occupied;
    others.erase(others.find(old_cell));
    const std::set<Cell> occupied_by_others(others.begin(), others.end());

    Node probe = node;
    probe.lat = position[id].lat;
    probe.lon = position[id].lon;
    const auto cands = candidate_cells(probe, grid, occupied_by_others, cfg);

    const bool old_is_periphery = is_periphery_cell(grid, old_cell);

    for (const CandidateCell& cand : cands) {
      if (cfg.require_strict_zone_improvement) {
        if (zone_rank(cand.zone) >= zone_rank(old_zone)) break;  // sorted by zone
      } else {
        if (zone_rank(cand.zone) > zone_rank(old_zone)) break;
      }
      if (cand.cell == old_cell) continue;
      if (node.is_border &&
          !(old_is_periphery && is_periphery_cell(grid, cand.cell)))
        continue;

      const GeoPoint new_pos = inverse_project(cell_center(cand.cell, spec), spec);

      // Lengths must be computed exactly as rebuild_with_positions will,
      // so the running LLC budget matches the final topology bit for bit.
      std::map<std::size_t, double> replaced;
      bool degenerate = false;
      for (std::size_t li : t.incident_links(id)) {
        const Link& l = t.link(li);
        Node na = t.node(l.a);
        Node nb = t.node(l.b);
        na.lat = (l.a == id) ? new_pos.lat : position[l.a].lat;
        na.lon = (l.a == id) ? new_pos.lon : position[l.a].lon;
        nb.lat = (l.b == id) ? new_pos.lat : position[l.b].lat;
        nb.lon = (l.b == id) ? new_pos.lon : position[l.b].lon;
        const double d = plane_distance_km(na, nb, spec);
        if (!(d > 0.0)) {
          degenerate = true;  // would land exactly on a neighbour
          break;
        }
        replaced[li] = d;
      }
      if (degenerate) continue;

      if (tentative_total(lengths, replaced) <= original_total) {
        position[id] = new_pos;
        for (const auto& [li, len] : replaced) lengths[li] = len;
        occupied.erase(occupied.find(old_cell));
        occupied.insert(cand.cell);
        cells[id] = cand.cell;
        plan.moves.push_back({id, old_cell, cand.cell, old_zone, cand.zone});
        break;
      }
    }
  }

  std::map<NodeId, GeoPoint> moved_positions;
  for (const Move& m : plan.moves) moved_positions[m.node] = position[m.node];
  Topology relocated = rebuild_with_positions(t, moved_positions, spec);

  plan.llc_after = total_link_length(relocated);
  plan.audit = verify_plan(t, relocated, plan, grid, cfg);
  return {std::move(relocated), std::move(plan)};
}

namespace {

std::string cell_str(const Cell& c) {
  return "(" + std::to_string(c.row) + ", " + std::to_string(c.col) + ")";
}

}  // namespace

PlanAudit verify_plan(const Topology& original, const Topology& relocated,
                      const RelocationPlan& plan, const SeismicGrid& grid,
                      const RelocationConfig& cfg) {
  const GridSpec& spec = grid.spec();

  if (original.nodes().size() != relocated.nodes().size() ||
      original.links().size() != relocated.links().size())
    throw PlanError("topologies differ in node or link count");
  for (std::size_t i = 0; i < original.links().size(); ++i) {
    const Link& a = original.links()[i];
    const Link& b = relocated.links()[i];
    if (a.id != b.id || a.a != b.a || a.b != b.b)
      throw PlanError("link adjacency differs between the two topologies");
  }
  std::map<NodeId, const Move*> moved;
  for (const Move& m : plan.moves) {
    if (!original.has_node(m.node))
      throw PlanError("plan moves unknown node '" + m.node + "'");
    if (!moved.emplace(m.node, &m).second)
      throw PlanError("plan moves node '" + m.node + "' twice");
  }
  for (const Node& n : original.nodes()) {
    const Node& r = relocated.node(n.id);
    if (!moved.count(n.id) && (n.lat != r.lat || n.lon != r.lon))
      throw PlanError("node '" + n.id + "' changed position without a plan entry");
  }

  PlanAudit audit;

  const double before = total_link_length(original);
  const double after = total_link_length(relocated);
  audit.llc.pass = after <= before;
  audit.llc.detail = "total " + detail::fmt_g(after) + " km vs original " +
                     detail::fmt_g(before) + " km";

  audit.consistency.pass = true;
  std::ostringstream issues;
  for (const Move& m : plan.moves) {
    const Node& orig_node = original.node(m.node);
    const Node& new_node = relocated.node(m.node);
    const Cell actual_old = node_cell(orig_node, spec);
    const Cell actual_new = node_cell(new_node, spec);
    const PlanePoint center = cell_center(m.new_cell, spec);
    const PlanePoint actual = project(new_node.lat, new_node.lon, spec);
    if (actual_old != m.old_cell || actual_new != m.new_cell ||
        std::hypot(actual.x - center.x, actual.y - center.y) > 1e-6 ||
        grid.zone_at(m.old_cell) != m.old_zone ||
        grid.zone_at(m.new_cell) != m.new_zone) {
      audit.consistency.pass = false;
      issues << m.node << " ";
    }
  }
  if (!audit.consistency.pass)
    audit.consistency.detail = "plan entries disagree with topology data: " + issues.str();

  for (const Move& m : plan.moves) {
    MoveAudit ma;
    ma.node = m.node;

    const int d = chebyshev_distance(m.old_cell, m.new_cell);
    ma.nssc.pass = d <= cfg.search_half_width;
    ma.nssc.detail = "moved " + std::to_string(d) + " cells, limit " +
                     std::to_string(cfg.search_half_width);

    const Node& orig_node = original.node(m.node);
    if (orig_node.is_border) {
      const bool ok = is_periphery_cell(grid, m.old_cell) &&
                      is_periphery_cell(grid, m.new_cell);
      ma.lmbc.pass = ok;
      ma.lmbc.detail = ok ? "border node moved periphery-to-periphery"
                          : "border node left the map periphery";
    } else {
      ma.lmbc.pass = true;
      ma.lmbc.detail = "not a border node";
    }

    const ZoneLevel zo = grid.zone_at(m.old_cell);
    const ZoneLevel zn = grid.zone_at(m.new_cell);
    ma.zone.pass = cfg.require_strict_zone_improvement
                       ? zone_rank(zn) < zone_rank(zo)
                       : zone_rank(zn) <= zone_rank(zo);
    ma.zone.detail = std::string(zone_name(zo)) + " " + cell_str(m.old_cell) +
                     " -> " + zone_name(zn) + " " + cell_str(m.new_cell);

    audit.moves.push_back(std::move(ma));
  }
  return audit;
}

namespace {

ordered_json check_json(const ConstraintCheck& c) {
  return ordered_json{{"pass", c.pass}, {"detail", c.detail}};
}

}  // namespace

void save_plan_json(const RelocationPlan& plan, const std::string& path,
                    const std::string& meta_spec_hash, unsigned long long meta_seed) {
  ordered_json doc;
  doc["meta"] = {{"spec_hash", meta_spec_hash}, {"seed", meta_seed}};
  doc["llc_before_km"] = plan.llc_before;
  doc["llc_after_km"] = plan.llc_after;
  doc["moves"] = ordered_json::array();
  for (const Move& m : plan.moves) {
    ordered_json jm;
    jm["node"] = m.node;
    jm["old_cell"] = {m.old_cell.row, m.old_cell.col};
    jm["new_cell"] = {m.new_cell.row, m.new_cell.col};
    jm["old_zone"] = zone_name(m.old_zone);
    jm["new_zone"] = zone_name(m.new_zone);
    doc["moves"].push_back(std::move(jm));
  }
  ordered_json audit;
  audit["llc"] = check_json(plan.audit.llc);
  audit["consistency"] = check_json(plan.audit.consistency);
  audit["moves"] = ordered_json::array();
  for (const MoveAudit& ma : plan.audit.moves) {
    ordered_json jm;
    jm["node"] = ma.node;
    jm["nssc"] = check_json(ma.nssc);
    jm["lmbc"] = check_json(ma.lmbc);
    jm["zone"] = check_json(ma.zone);
    audit["moves"].push_back(std::move(jm));
  }
  doc["audit"] = std::move(audit);
  std::ofstream out(path);
  if (!out) throw Error("cannot write plan file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace szanr

#ifndef SZANR_RELOCATION_HPP
#define SZANR_RELOCATION_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "szanr/geo_grid.hpp"
#include "szanr/topology.hpp"

namespace szanr {

enum class NodeOrder {
  SeverityDesc,  // current zone descending, ties by id ascending
  IdAsc,
};

struct RelocationConfig {
  int search_half_width = 2;  // 5x5 window with the default
  bool require_strict_zone_improvement = true;
  NodeOrder node_order = NodeOrder::SeverityDesc;
};

struct CandidateCell {
  Cell cell;
  ZoneLevel zone = ZoneLevel::None;
  int chebyshev = 0;  // distance from the node's current cell
};

struct Move {
  NodeId node;
  Cell old_cell;
  Cell new_cell;
  ZoneLevel old_zone = ZoneLevel::None;
  ZoneLevel new_zone = ZoneLevel::None;
};

struct ConstraintCheck {
  bool pass = true;
  std::string detail;
};

struct MoveAudit {
  NodeId node;
  ConstraintCheck nssc;
  ConstraintCheck lmbc;
  ConstraintCheck zone;
};

struct PlanAudit {
  ConstraintCheck llc;
  ConstraintCheck consistency;  // plan matches the two topologies
  std::vector<MoveAudit> moves;

  bool all_pass() const;
};

struct RelocationPlan {
  std::vector<Move> moves;
  double llc_before = 0.0;
  double llc_after = 0.0;
  PlanAudit audit;
};

// A cell counts as map periphery when it is within Chebyshev distance 1
// of the grid boundary or of a no-data (ocean) cell.
bool is_periphery_cell(const SeismicGrid& grid, const Cell& cell);

Cell node_cell(const Node& node, const GridSpec& spec);

// In-window, in-grid cells with zone data, excluding cells occupied by
// other nodes, sorted by (zone asc, Chebyshev asc, row asc, col asc).
// The node's own cell is included. Throws OutOfGridError when the node
// projects outside the grid.
std::vector<CandidateCell> candidate_cells(const Node& node,
                                           const SeismicGrid& grid,
                                           const std::set<Cell>& occupied_by_others,
                                           const RelocationConfig& cfg);

// Greedy relocation pass. Nodes are visited in cfg.node_order; each takes
// the first candidate cell that improves its zone (strictly, when
// configured), respects LMBC, and keeps the total link length within the
// original topology's total. Relocated nodes sit at their new cell's
// center. Deterministic.
std::pair<Topology, RelocationPlan> relocate(const Topology& t,
                                             const SeismicGrid& grid,
                                             const RelocationConfig& cfg);

// Independent recheck of LLC, NSSC, LMBC and zone improvement from raw
// data. Throws PlanError when the plan does not fit the two topologies.
PlanAudit verify_plan(const Topology& original, const Topology& relocated,
                      const RelocationPlan& plan, const SeismicGrid& grid,
                      const RelocationConfig& cfg);

void save_plan_json(const RelocationPlan& plan, const std::string& path,
                    const std::string& meta_spec_hash, unsigned long long meta_seed);

}  // namespace szanr

#endif  // SZANR_RELOCATION_HPP

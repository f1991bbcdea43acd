#include "szanr/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "szanr/metrics.hpp"
#include "szanr/quake_sim.hpp"
#include "text_util.hpp"

namespace szanr {

namespace fs = std::filesystem;

int ScenarioSpec::capacity_for(Regime r) const {
  if (capacity_override > 0) return capacity_override;
  return r == Regime::Wdm ? wdm_channels : eon_slots;
}

namespace {

void fnv_bytes(std::uint64_t& h, const std::string& bytes) {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  h ^= 0xabu;
  h *= 1099511628211ull;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// Write through a temp file so partially written artifacts never appear
// under their final name.
void atomic_write(const std::string& path,
                  const std::function<void(const std::string&)>& writer) {
  const std::string tmp = path + ".tmp";
  writer(tmp);
  fs::rename(tmp, path);
}

std::string scenario_label(const std::string& topo, Regime r, Protection p) {
  return topo + "-" + regime_name(r) + "-" + protection_name(p);
}

}  // namespace

std::string spec_hash(const ScenarioSpec& spec) {
  std::uint64_t h = 1469598103934665603ull;
  fnv_bytes(h, file_bytes(spec.topology_path));
  fnv_bytes(h, file_bytes(spec.zones_path));
  fnv_bytes(h, file_bytes(spec.catalog_path));
  std::ostringstream params;
  for (Regime r : spec.regimes) params << regime_name(r) << ';';
  for (Protection p : spec.protections) params << protection_name(p) << ';';
  params << spec.capacity_override << ';' << spec.wdm_channels << ';'
         << spec.eon_slots << ';' << spec.seed << ';' << spec.relocate << ';'
         << spec.relocation.search_half_width << ';'
         << spec.relocation.require_strict_zone_improvement << ';'
         << static_cast<int>(spec.relocation.node_order) << ';' << spec.k_paths;
  fnv_bytes(h, params.str());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Diagnostic> validate_spec(const ScenarioSpec& spec) {
  std::vector<Diagnostic> diags;

  std::optional<SeismicGrid> grid;
  try {
    grid = SeismicGrid::load_csv(spec.zones_path);
  } catch (const Error& e) {
    diags.push_back({spec.zones_path, e.what()});
  }

  std::optional<Topology> topo;
  if (grid) {
    try {
      topo = load_topology(spec.topology_path, grid->spec());
    } catch (const Error& e) {
      diags.push_back({spec.topology_path, e.what()});
    }
  }

  if (grid && topo) {
    if (!is_connected(*topo))
      diags.push_back({spec.topology_path, "topology is not connected"});
    for (const Node& n : topo->nodes()) {
      try {
        const Cell c = cell_of(project(n.lat, n.lon, grid->spec()), grid->spec());
        if (is_no_data(grid->zone_at(c)))
          diags.push_back({"node " + n.id, "sits on a cell with no zone data"});
      } catch (const Error& e) {
        diags.push_back({"node " + n.id, e.what()});
      }
    }
    for (const Link& l : topo->links()) {
      if (!l.explicit_length) continue;
      const double d = plane_distance_km(topo->node(l.a), topo->node(l.b),
                                         grid->spec());
      if (std::abs(d - l.length_km) > 0.5)
        diags.push_back({"link " + l.id,
                         "explicit length " + detail::fmt_g(l.length_km) +
                             " km deviates from plane distance " +
                             detail::fmt_g(d) + " km by more than 0.5 km"});
    }
  }

  if (!spec.catalog_path.empty()) {
    try {
      const auto events = load_catalog_csv(spec.catalog_path);
      const FailureModel model = FailureModel::default_model();
      for (const EarthquakeEvent& e : events) {
        try {
          (void)model.failure_radius(e.magnitude);
        } catch (const OutOfModelError& ex) {
          diags.push_back({"event " + e.id, ex.what()});
        }
      }
    } catch (const Error& e) {
      diags.push_back({spec.catalog_path, e.what()});
    }
  }

  if (spec.k_paths < 1) diags.push_back({"k_paths", "must be at least 1"});
  for (Regime r : spec.regimes)
    if (spec.capacity_for(r) < 1)
      diags.push_back({"capacity", "must be at least 1"});
  return diags;
}

int run_pipeline(const ScenarioSpec& spec) {
  const SeismicGrid grid = SeismicGrid::load_csv(spec.zones_path);
  const Topology original = load_topology(spec.topology_path, grid.spec());
  const std::vector<EarthquakeEvent> catalog =
      spec.catalog_path.empty() ? std::vector<EarthquakeEvent>{}
                                : load_catalog_csv(spec.catalog_path);
  const FailureModel model = FailureModel::default_model();
  const std::string hash = spec_hash(spec);

  fs::create_directories(spec.out_dir);

  std::vector<std::pair<std::string, Topology>> topologies;
  topologies.emplace_back("szu", original);
  if (spec.relocate) {
    auto [relocated, plan] = relocate(original, grid, spec.relocation);
    atomic_write(spec.out_dir + "/relocation_plan.json", [&](const std::string& p) {
      save_plan_json(plan, p, hash, spec.seed);
    });
    atomic_write(spec.out_dir + "/relocated_topology.json",
                 [&](const std::string& p) { save_topology(relocated, p); });
    topologies.emplace_back("szanr", std::move(relocated));
  }

  std::vector<ScenarioReport> reports;
  for (const auto& [topo_label, topo] : topologies) {
    const auto demands = generate_demands(topo, spec.seed);
    for (Regime regime : spec.regimes) {
      for (Protection protection : spec.protections) {
        const std::string label = scenario_label(topo_label, regime, protection);
        const std::string dir = spec.out_dir + "/" + label;
        fs::create_directories(dir);

        const LightpathSet lp = establish(topo, demands, regime, protection,
                                          spec.capacity_for(regime), spec.k_paths);
        atomic_write(dir + "/lightpaths.json", [&](const std::string& p) {
          save_lightpaths_json(lp, p, hash, spec.seed);
        });

        std::vector<EventMetrics> per_event;
        for (const EarthquakeEvent& e : catalog) {
          const FailureSet failures = apply_event(topo, grid.spec(), model, e);
          const auto verdicts = surviving_connections(lp, failures);
          per_event.push_back(event_metrics(e.id, lp, verdicts));
        }
        ScenarioReport report = make_scenario_report(label, std::move(per_event));
        atomic_write(dir + "/metrics.csv", [&](const std::string& p) {
          write_event_csv(report, p, hash, spec.seed);
        });
        atomic_write(dir + "/report.json", [&](const std::string& p) {
          write_report_json(report, p, hash, spec.seed);
        });
        reports.push_back(std::move(report));
      }
    }
  }

  if (reports.size() >= 2) {
    const Comparison cmp = compare(reports);
    atomic_write(spec.out_dir + "/comparison.csv", [&](const std::string& p) {
      write_comparison_csv(cmp, p, hash, spec.seed);
    });
    atomic_write(spec.out_dir + "/comparison.json", [&](const std::string& p) {
      write_comparison_json(cmp, p, hash, spec.seed);
    });
  }
  return 0;
}

}  // namespace szanr

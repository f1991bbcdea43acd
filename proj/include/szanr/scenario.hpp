#ifndef SZANR_SCENARIO_HPP
#define SZANR_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "szanr/lightpath.hpp"
#include "szanr/relocation.hpp"

namespace szanr {

// Everything one `run` invocation needs. Regimes and protections are
// lists; the pipeline runs their cross product, doubled over the SZU and
// SZANR topologies when relocation is requested.
struct ScenarioSpec {
  std::string topology_path;
  std::string zones_path;
  std::string catalog_path;
  std::vector<Regime> regimes{Regime::Wdm};
  std::vector<Protection> protections{Protection::None};
  int capacity_override = 0;  // 0 = per-regime defaults below
  int wdm_channels = 80;      // 4 THz C-band at 50 GHz
  int eon_slots = 320;        // 4 THz at 12.5 GHz
  std::uint64_t seed = 1;
  bool relocate = false;
  RelocationConfig relocation;
  int k_paths = 3;
  std::string out_dir;

  int capacity_for(Regime r) const;
};

struct Diagnostic {
  std::string where;    // file, node id, or event id
  std::string message;
};

// FNV-1a over the input file contents and all scenario parameters;
// embedded in every emitted artifact for reproducibility checks.
std::string spec_hash(const ScenarioSpec& spec);

// Dry-run parse and cross-checks without simulation. Parse failures
// become diagnostics, never exceptions.
std::vector<Diagnostic> validate_spec(const ScenarioSpec& spec);

// load -> (relocate) -> establish -> replay -> report. Emits per-scenario
// lightpaths.json, metrics.csv and report.json plus relocation_plan.json
// and a comparison table when applicable. Returns 0 on success; parse and
// model errors propagate as exceptions.
int run_pipeline(const ScenarioSpec& spec);

}  // namespace szanr

#endif  // SZANR_SCENARIO_HPP

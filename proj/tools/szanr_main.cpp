// Command-line front end: validate inputs, relocate nodes, establish
// lightpaths, replay earthquake catalogs and compare scenarios.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "szanr/metrics.hpp"
#include "szanr/quake_sim.hpp"
#include "szanr/scenario.hpp"

namespace {

using namespace szanr;

Regime parse_regime(const std::string& s) {
  return s == "wdm" ? Regime::Wdm : Regime::Eon;
}

Protection parse_protection(const std::string& s) {
  return s == "none" ? Protection::None : Protection::Dpp;
}

struct CommonOpts {
  std::string topology, zones, catalog, out;
  std::vector<std::string> regimes{"wdm"};
  std::vector<std::string> protections{"none"};
  int capacity = 0;
  unsigned long long seed = 1;
  bool relocate = false;
  int search_half_width = 2;
  int k = 3;
};

void add_input_flags(CLI::App* cmd, CommonOpts& o, bool need_catalog) {
  cmd->add_option("--topology", o.topology, "Topology JSON file")->required();
  cmd->add_option("--zones", o.zones, "Seismic zone grid CSV")->required();
  auto* cat = cmd->add_option("--catalog", o.catalog, "Earthquake catalog CSV");
  if (need_catalog) cat->required();
}

void add_scenario_flags(CLI::App* cmd, CommonOpts& o, bool multi) {
  const auto regime_check = CLI::IsMember({"wdm", "eon"});
  const auto prot_check = CLI::IsMember({"none", "dpp"});
  if (multi) {
    cmd->add_option("--regime", o.regimes,
                    "Lightpath regime(s), repeatable: wdm, eon")
        ->check(regime_check);
    cmd->add_option("--protection", o.protections,
                    "Protection scheme(s), repeatable: none, dpp")
        ->check(prot_check);
  } else {
    o.regimes.resize(1);
    o.protections.resize(1);
    cmd->add_option("--regime", o.regimes[0], "Lightpath regime: wdm or eon")
        ->check(regime_check);
    cmd->add_option("--protection", o.protections[0],
                    "Protection scheme: none or dpp")
        ->check(prot_check);
  }
  cmd->add_option("--capacity", o.capacity,
                  "Wavelengths (WDM) or slots (EON) per link; 0 = defaults "
                  "(80 channels / 320 slots)");
  cmd->add_option("--seed", o.seed, "Demand generation seed");
  cmd->add_option("--k", o.k, "Candidate paths per demand");
}

ScenarioSpec to_spec(const CommonOpts& o) {
  ScenarioSpec spec;
  spec.topology_path = o.topology;
  spec.zones_path = o.zones;
  spec.catalog_path = o.catalog;
  spec.regimes.clear();
  for (const auto& r : o.regimes) spec.regimes.push_back(parse_regime(r));
  spec.protections.clear();
  for (const auto& p : o.protections)
    spec.protections.push_back(parse_protection(p));
  spec.capacity_override = o.capacity;
  spec.seed = o.seed;
  spec.relocate = o.relocate;
  spec.relocation.search_half_width = o.search_half_width;
  spec.k_paths = o.k;
  spec.out_dir = o.out;
  return spec;
}

int cmd_validate(const CommonOpts& o) {
  const auto diags = validate_spec(to_spec(o));
  for (const Diagnostic& d : diags)
    std::cerr << d.where << ": " << d.message << "\n";
  if (diags.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  std::cerr << diags.size() << " issue(s) found\n";
  return 1;
}

int cmd_relocate(const CommonOpts& o) {
  const SeismicGrid grid = SeismicGrid::load_csv(o.zones);
  const Topology topo = load_topology(o.topology, grid.spec());
  RelocationConfig cfg;
  cfg.search_half_width = o.search_half_width;
  const auto [relocated, plan] = relocate(topo, grid, cfg);

  std::filesystem::create_directories(o.out);
  const std::string hash = spec_hash(to_spec(o));
  save_plan_json(plan, o.out + "/relocation_plan.json", hash, o.seed);
  save_topology(relocated, o.out + "/relocated_topology.json");
  std::cout << plan.moves.size() << " node(s) moved; total link length "
            << plan.llc_before << " -> " << plan.llc_after << " km\n";
  return plan.audit.all_pass() ? 0 : 1;
}

int cmd_establish(const CommonOpts& o) {
  const SeismicGrid grid = SeismicGrid::load_csv(o.zones);
  const Topology topo = load_topology(o.topology, grid.spec());
  const ScenarioSpec spec = to_spec(o);
  const Regime regime = spec.regimes.at(0);
  const Protection protection = spec.protections.at(0);

  const auto demands = generate_demands(topo, spec.seed);
  const LightpathSet lp = establish(topo, demands, regime, protection,
                                    spec.capacity_for(regime), spec.k_paths);
  std::filesystem::create_directories(o.out);
  save_lightpaths_json(lp, o.out + "/lightpaths.json", spec_hash(spec), spec.seed);
  std::cout << lp.established_count() << "/" << lp.assignments.size()
            << " demands established\n";
  return 0;
}

int cmd_simulate(const CommonOpts& o) {
  ScenarioSpec spec = to_spec(o);
  spec.relocate = false;  // simulate runs on the topology as given
  return run_pipeline(spec);
}

int cmd_run(const CommonOpts& o) { return run_pipeline(to_spec(o)); }

int cmd_compare(const std::vector<std::string>& report_paths,
                const std::string& out) {
  std::vector<ScenarioReport> reports;
  for (const std::string& p : report_paths)
    reports.push_back(load_report_json(p));
  const Comparison cmp = compare(reports);
  std::filesystem::create_directories(out);
  write_comparison_csv(cmp, out + "/comparison.csv", "-", 0);
  write_comparison_json(cmp, out + "/comparison.json", "-", 0);
  for (const ScenarioAggregate& a : cmp.aggregates) {
    std::cout << a.scenario << ": total loss " << a.total_bandwidth_lost_thz
              << " THz";
    if (a.bandwidth_reduction_ratio)
      std::cout << " (x" << *a.bandwidth_reduction_ratio << " of baseline)";
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seismic-zone-aware node relocation and earthquake "
               "survivability simulator for optical backbone networks"};
  app.require_subcommand(1);

  CommonOpts vo, ro, eo, so, uo;
  std::vector<std::string> compare_reports;
  std::string compare_out = ".";

  auto* validate = app.add_subcommand("validate", "Dry-run checks on input files");
  add_input_flags(validate, vo, false);

  auto* reloc = app.add_subcommand("relocate", "Relocate nodes out of high seismic zones");
  add_input_flags(reloc, ro, false);
  reloc->add_option("--search-half-width", ro.search_half_width,
                    "Search window half width in cells");
  reloc->add_option("--out", ro.out, "Output directory")->required();

  auto* estab = app.add_subcommand("establish", "Establish the full-mesh demand set");
  add_input_flags(estab, eo, false);
  add_scenario_flags(estab, eo, false);
  estab->add_option("--out", eo.out, "Output directory")->required();

  auto* sim = app.add_subcommand("simulate", "Establish lightpaths and replay a catalog");
  add_input_flags(sim, so, true);
  add_scenario_flags(sim, so, false);
  sim->add_option("--out", so.out, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Full pipeline over the scenario matrix");
  add_input_flags(run, uo, true);
  add_scenario_flags(run, uo, true);
  run->add_flag("--relocate", uo.relocate, "Also run the relocated (szanr) topology");
  run->add_option("--search-half-width", uo.search_half_width,
                  "Search window half width in cells");
  run->add_option("--out", uo.out, "Output directory")->required();

  auto* cmp = app.add_subcommand("compare", "Compare previously emitted reports");
  cmp->add_option("reports", compare_reports, "report.json files (first = baseline)")
      ->expected(-2);
  cmp->add_option("--out", compare_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(vo);
    if (reloc->parsed()) return cmd_relocate(ro);
    if (estab->parsed()) return cmd_establish(eo);
    if (sim->parsed()) return cmd_simulate(so);
    if (run->parsed()) return cmd_run(uo);
    if (cmp->parsed()) return cmd_compare(compare_reports, compare_out);
  } catch (const szanr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const szanr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

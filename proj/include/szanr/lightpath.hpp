#ifndef SZANR_LIGHTPATH_HPP
#define SZANR_LIGHTPATH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "szanr/topology.hpp"

namespace szanr {

enum class Regime { Wdm, Eon };
enum class Protection { None, Dpp };

const char* regime_name(Regime r);
const char* protection_name(Protection p);

struct Demand {
  NodeId src;
  NodeId dst;
  int slots_required = 2;       // EON, guard band included
  int wavelengths_required = 1; // WDM
};

// Fixed-size occupancy bitmap over wavelength channels or frequency slots.
class SpectrumBitmap {
public:
  explicit SpectrumBitmap(int size);

  int size() const { return size_; }
  bool test(int i) const;
  void set(int i);
  void set_range(int start, int count);
  bool any_in_range(int start, int count) const;

  // Bitwise OR of two same-size bitmaps.
  SpectrumBitmap& operator|=(const SpectrumBitmap& other);

private:
  int size_;
  std::vector<std::uint64_t> words_;
};

// Lowest start index of a run of n free positions, or nullopt.
std::optional<int> first_fit(const SpectrumBitmap& occupancy, int n);

// Contiguous channel/slot interval [start, start + count).
struct ChannelRange {
  int start = 0;
  int count = 0;

  friend bool operator==(const ChannelRange&, const ChannelRange&) = default;
};

enum class AssignmentStatus { Established, Blocked };

struct Assignment {
  Demand demand;
  AssignmentStatus status = AssignmentStatus::Blocked;
  std::vector<NodeId> working_path;
  std::vector<LinkId> working_links;
  ChannelRange working;
  std::optional<std::vector<NodeId>> backup_path;
  std::optional<std::vector<LinkId>> backup_links;
  std::optional<ChannelRange> backup;
};

// Cheap identity of the topology a result was computed on; positions
// enter through the total length, so SZU and SZANR variants differ.
struct TopologySignature {
  std::size_t node_count = 0;
  std::size_t link_count = 0;
  std::uint64_t link_id_hash = 0;
  double total_length_km = 0.0;

  friend bool operator==(const TopologySignature&, const TopologySignature&) = default;
};

TopologySignature signature_of(const Topology& t);

struct LightpathSet {
  Regime regime = Regime::Wdm;
  Protection protection = Protection::None;
  int capacity = 0;  // W wavelengths or S slots per link
  std::vector<Assignment> assignments;
  std::map<LinkId, SpectrumBitmap> spectrum;
  TopologySignature topo_sig;

  std::size_t established_count() const;
};

// One demand per unordered node pair, ordered by (src id, dst id); slot
// requirements drawn i.i.d. uniform over {2..10} from the seed.
std::vector<Demand> generate_demands(const Topology& t, std::uint64_t seed);

// Portable uniform integer draw on [lo, hi] (rejection sampling).
int uniform_int(std::mt19937_64& gen, int lo, int hi);

// Static first-fit establishment over the k shortest paths per demand.
// WDM assigns one wavelength index per path; EON assigns a contiguous
// slot interval, identical on every link of the path. Under DPP a
// link-disjoint backup with its own first-fit resources is required,
// otherwise the demand is blocked.
LightpathSet establish(const Topology& t, const std::vector<Demand>& demands,
                       Regime regime, Protection protection, int capacity,
                       int k);

void save_lightpaths_json(const LightpathSet& lp, const std::string& path,
                          const std::string& meta_spec_hash,
                          unsigned long long meta_seed);

}  // namespace szanr

#endif  // SZANR_LIGHTPATH_HPP

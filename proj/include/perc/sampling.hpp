#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "perc/lattice.hpp"

namespace perc {

// Identifies one independent trial of one experiment under a master seed.
// Distinct (experiment_id, trial_index) pairs give independent site streams.
struct TrialKey {
    uint64_t master_seed = 0;
    uint32_t experiment_id = 0;
    uint64_t trial_index = 0;
    friend bool operator==(const TrialKey& a, const TrialKey& b) {
        return a.master_seed == b.master_seed && a.experiment_id == b.experiment_id &&
               a.trial_index == b.trial_index;
    }
};

// splitmix64 finalizer; full avalanche.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-trial stream key; combined with the site counter in site_uniform53.
inline uint64_t trial_stream_key(const TrialKey& key) {
    uint64_t h = mix64(key.master_seed ^ 0x7061726b6f6c6162ULL);
    h = mix64(h ^ (uint64_t(key.experiment_id) * 0xff51afd7ed558ccdULL));
    h = mix64(h ^ (key.trial_index * 0xc4ceb9fe1a85ec53ULL));
    return h;
}

// 53-bit uniform for one site counter within a trial stream.
inline uint64_t site_uniform53(uint64_t stream_key, uint64_t site_counter) {
    return mix64(stream_key ^ (site_counter * 0x2545f4914f6cdd1dULL)) >> 11;
}

// Open/closed threshold: site open iff uniform53 < threshold. Ties impossible.
inline uint64_t open_threshold(double p) {
    const double scaled = p * 9007199254740992.0;  // 2^53
    if (scaled <= 0.0) return 0;
    if (scaled >= 9007199254740992.0) return 9007199254740992ULL;
    return static_cast<uint64_t>(scaled);
}

double critical_p(LatticeKind kind);

// Immutable open/closed assignment on a box. The state of a site is a pure
// function of (key, site) given (lattice, box, p): counter-mode PRF over the
// row-major site index, so regeneration is bit-exact regardless of iteration
// order or worker count.
class Configuration {
  public:
    Configuration(LatticeKind lattice, BoxRegion box, double p, TrialKey key);
    // Explicit states (golden tests, fixtures, enumeration oracles).
    Configuration(LatticeKind lattice, BoxRegion box, double p, TrialKey key,
                  std::vector<uint8_t> states);

    LatticeKind lattice() const { return lattice_; }
    const BoxRegion& box() const { return box_; }
    double p_open() const { return p_; }
    const TrialKey& key() const { return key_; }

    int width() const { return box_.side(); }
    size_t index_of(Site s) const {
        return size_t(s.y - box_.ymin()) * width() + size_t(s.x - box_.xmin());
    }
    Site site_at(size_t idx) const {
        return {box_.xmin() + int(idx % width()), box_.ymin() + int(idx / width())};
    }
    bool is_open(Site s) const { return states_[index_of(s)] != 0; }
    bool has_color(Site s, SiteColor c) const { return is_open(s) == (c == SiteColor::Open); }
    const std::vector<uint8_t>& states() const { return states_; }

    Configuration flip(Site s) const;

    // Compact run-length text round-trip, for debugging and golden tests.
    std::string serialize() const;
    static Configuration deserialize(const std::string& text);

  private:
    LatticeKind lattice_;
    BoxRegion box_;
    double p_;
    TrialKey key_;
    std::vector<uint8_t> states_;
};

Configuration sample(LatticeKind lattice, BoxRegion box, double p, TrialKey key);

}  // namespace perc

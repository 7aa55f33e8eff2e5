#pragma once

#include <functional>
#include <vector>

#include "perc/sampling.hpp"
#include "perc/stats.hpp"

namespace perc {

// Ordered color pattern of a horseshoe arm crossing, counterclockwise as seen
// from the inner box. Two arms (one open, one closed; rotational order
// ignored, the two orders being exchanged by reflection) or three arms
// (open, closed, open).
struct ArmPattern {
    std::vector<SiteColor> colors;
    // true: start arms from the spec's fixed arcs (Gamma1/Gamma2 for two arms;
    // whole inner boundary for three). false: whole inner boundary.
    bool use_start_arcs = false;

    static ArmPattern two_arm(bool use_start_arcs = false) {
        return {{SiteColor::Open, SiteColor::Closed}, use_start_arcs};
    }
    static ArmPattern three_arm() {
        return {{SiteColor::Open, SiteColor::Closed, SiteColor::Open}, false};
    }
};

struct ArmEventOutcome {
    bool occurred = false;
    std::vector<Site> witness_arm_endpoints;  // one outer endpoint per arm when occurred
};

ArmEventOutcome horseshoe_event(const Configuration& config, const HorseshoeSpec& spec,
                                const ArmPattern& pattern);

// zeta(phi,l,n): a closed arm from K1 and an open arm from K2, each confined
// to the annular sector and reaching the outer boundary.
ArmEventOutcome sector_event(const Configuration& config, const SectorRegion& region);

// Monte Carlo estimate of P(event) over independent trials; the closure gets
// the trial key and owns configuration generation.
BernoulliEstimate estimate_event_probability(const std::function<bool(const TrialKey&)>& event,
                                             long long trials, const TrialKey& key_base);

}  // namespace perc

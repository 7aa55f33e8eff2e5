#pragma once

#include <string>
#include <vector>

#include "perc/sampling.hpp"

namespace perc {

enum class ExperimentType {
    MinHeight,     // M_n per trial
    BlockMoments,  // X_{n,m} over the m grid
    StripDensity,  // Q_{n,m} over the m grid
    SizeMoments,   // |L_n|, |F_n|, |Q_n|
    Stationarity,  // lowest site height h of the highest crossing
    Horseshoe,     // J_2, J_3 indicators over the nu grid
    SectorPair,    // zeta(pi/2) and zeta(pi) indicators over the n grid
};

const char* experiment_type_name(ExperimentType type);
ExperimentType experiment_type_from_name(const std::string& name);

struct ExperimentSpec {
    ExperimentType type = ExperimentType::MinHeight;
    std::vector<int> n_values;   // box radii
    std::vector<int> m_values;   // strip/block heights
    int rho = 3;                 // horseshoe inner exponent
    std::vector<int> nu_values;  // horseshoe outer exponents
    int l = 8;                   // sector inner radius
    long long trials = 1;
};

struct ExperimentPlan {
    std::string id = "unnamed";
    LatticeKind lattice = LatticeKind::Triangular;
    uint64_t master_seed = 1;
    int workers = 0;  // 0: PERCLAB_WORKERS env or hardware
    double p_override = -1.0;  // < 0: critical_p(lattice)
    std::string output_dir = "out";
    std::vector<ExperimentSpec> experiments;

    double p() const { return p_override >= 0.0 ? p_override : critical_p(lattice); }
};

// Line-oriented key-value text with a [plan] section and one [experiment]
// section per experiment. Unknown keys warn, they do not fail.
ExperimentPlan parse_plan(const std::string& text, std::vector<std::string>* warnings = nullptr);
std::string serialize_plan(const ExperimentPlan& plan);

// Throws std::invalid_argument with a cell-level diagnostic on bad geometry
// (m > n, rho > nu, l > n/2, empty grids, trials < 1).
void validate_plan(const ExperimentPlan& plan);

uint64_t plan_digest(const ExperimentPlan& plan);

}  // namespace perc

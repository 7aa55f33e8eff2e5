#pragma once

#include <string>
#include <vector>

#include "perc/plan.hpp"

namespace perc {

// One resolved grid cell of an experiment.
struct CellSpec {
    int experiment = 0;
    int cell = 0;
    ExperimentType type = ExperimentType::MinHeight;
    int n = 0;    // box radius (or outer radius 2^nu for horseshoes)
    int rho = 0;
    int nu = 0;
    int l = 0;
    std::vector<int> m_values;
    long long trials = 0;

    uint32_t experiment_id() const { return uint32_t(experiment) << 16 | uint32_t(cell); }
};

struct RecordRow {
    int experiment = 0;
    int cell = 0;
    long long trial = 0;
    TrialKey key;
    std::vector<long long> values;  // parallel to columns_for(cell)
};

struct Manifest {
    std::string artifact_version;
    uint64_t plan_digest = 0;
    uint64_t master_seed = 0;
    double p_used = 0.0;
    std::string started_at;
    std::string finished_at;
    long long row_count = 0;
};

struct Dataset {
    ExperimentPlan plan;
    std::vector<CellSpec> cells;
    std::vector<RecordRow> rows;  // canonical order: (experiment, cell, trial)
    Manifest manifest;
};

extern const char* const kArtifactVersion;

std::vector<std::string> columns_for(const CellSpec& cell);
std::vector<CellSpec> plan_cells(const ExperimentPlan& plan);

// Executes the trial identified by (cell, trial); pure function of the key.
RecordRow run_trial(const ExperimentPlan& plan, const CellSpec& cell, long long trial);

// Full in-memory run; bit-identical output for any worker count.
Dataset run_plan(const ExperimentPlan& plan);

// Runs into output_dir (rows.jsonl, rows.csv, cells.csv, manifest.json,
// plan.txt), resuming from rows already present when the plan digest matches.
Dataset run_plan_to_dir(const ExperimentPlan& plan, const std::string& output_dir);

void write_dataset(const Dataset& dataset, const std::string& output_dir);
Dataset load_dataset(const std::string& output_dir);

int resolve_worker_count(const ExperimentPlan& plan);

}  // namespace perc

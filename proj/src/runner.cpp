#include "perc/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "perc/armevents.hpp"
#include "perc/features.hpp"

namespace perc {

const char* const kArtifactVersion = "perclab-rows-1";

namespace {

using nlohmann::json;

std::string iso_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<std::string> columns_for(const CellSpec& cell) {
    std::vector<std::string> cols;
    switch (cell.type) {
        case ExperimentType::MinHeight:
            cols = {"crossing", "m_n"};
            break;
        case ExperimentType::BlockMoments:
            cols = {"crossing", "m_n"};
            for (int m : cell.m_values) cols.push_back("x_m" + std::to_string(m));
            break;
        case ExperimentType::StripDensity:
            cols = {"crossing", "q_total"};
            for (int m : cell.m_values) cols.push_back("q_m" + std::to_string(m));
            break;
        case ExperimentType::SizeMoments:
            cols = {"crossing", "l_size", "f_size", "q_size"};
            break;
        case ExperimentType::Stationarity:
            cols = {"crossing", "h"};
            break;
        case ExperimentType::Horseshoe:
            cols = {"j2", "j3"};
            break;
        case ExperimentType::SectorPair:
            cols = {"zeta_quarter", "zeta_half"};
            break;
    }
    return cols;
}

std::vector<CellSpec> plan_cells(const ExperimentPlan& plan) {
    std::vector<CellSpec> cells;
    for (size_t e = 0; e < plan.experiments.size(); ++e) {
        const auto& exp = plan.experiments[e];
        const auto& grid =
            exp.type == ExperimentType::Horseshoe ? exp.nu_values : exp.n_values;
        for (size_t c = 0; c < grid.size(); ++c) {
            CellSpec cell;
            cell.experiment = int(e);
            cell.cell = int(c);
            cell.type = exp.type;
            cell.rho = exp.rho;
            cell.l = exp.l;
            cell.m_values = exp.m_values;
            cell.trials = exp.trials;
            if (exp.type == ExperimentType::Horseshoe) {
                cell.nu = grid[c];
                cell.n = 1 << cell.nu;
            } else {
                cell.n = grid[c];
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

RecordRow run_trial(const ExperimentPlan& plan, const CellSpec& cell, long long trial) {
    RecordRow row;
    row.experiment = cell.experiment;
    row.cell = cell.cell;
    row.trial = trial;
    row.key = {plan.master_seed, cell.experiment_id(), uint64_t(trial)};
    const double p = plan.p();

    switch (cell.type) {
        case ExperimentType::MinHeight:
        case ExperimentType::BlockMoments: {
            const Configuration config =
                sample(plan.lattice, {{0, 0}, cell.n}, p, row.key);
            const PivotalReport rep = pivotal_sites(config);
            row.values = {rep.crossing_exists ? 1 : 0, rep.min_height};
            if (cell.type == ExperimentType::BlockMoments)
                for (int m : cell.m_values)
                    row.values.push_back(block_indicator_count(rep, m));
            break;
        }
        case ExperimentType::StripDensity: {
            const Configuration config =
                sample(plan.lattice, {{0, 0}, cell.n}, p, row.key);
            const PivotalReport rep = pivotal_sites(config);
            row.values = {rep.crossing_exists ? 1 : 0,
                          (long long)rep.pivotal_sites.size()};
            for (int m : cell.m_values)
                row.values.push_back(strip_pivotal_count(rep, m));
            break;
        }
        case ExperimentType::SizeMoments: {
            const Configuration config =
                sample(plan.lattice, {{0, 0}, cell.n}, p, row.key);
            TrialFeatureOptions opt;
            opt.need_lowest = true;
            opt.need_pioneers = plan.lattice == LatticeKind::Triangular;
            const TrialFeatures f = compute_trial_features(config, opt);
            row.values = {f.crossing ? 1 : 0, f.lowest_size, f.pioneer_size,
                          (long long)f.pivotal.size()};
            break;
        }
        case ExperimentType::Stationarity: {
            const Configuration config =
                sample(plan.lattice, {{0, 0}, cell.n}, p, row.key);
            TrialFeatureOptions opt;
            opt.need_highest = true;
            const TrialFeatures f = compute_trial_features(config, opt);
            row.values = {f.crossing ? 1 : 0,
                          f.lowest_site_of_highest ? *f.lowest_site_of_highest : 0};
            break;
        }
        case ExperimentType::Horseshoe: {
            HorseshoeSpec spec;
            spec.inner_exp = cell.rho;
            spec.outer_exp = cell.nu;
            spec.anchor = {0, 0};
            const BoxRegion sample_box = spec.outer_box();
            const Configuration config = sample(plan.lattice, sample_box, p, row.key);
            const bool j2 = horseshoe_event(config, spec, ArmPattern::two_arm(true)).occurred;
            const bool j3 = horseshoe_event(config, spec, ArmPattern::three_arm()).occurred;
            row.values = {j2 ? 1 : 0, j3 ? 1 : 0};
            break;
        }
        case ExperimentType::SectorPair: {
            const Configuration config =
                sample(plan.lattice, {{0, 0}, cell.n}, p, row.key);
            SectorRegion quarter{SectorAperture::QuarterPlane, cell.l, cell.n};
            SectorRegion half{SectorAperture::HalfPlane, cell.l, cell.n};
            const bool zq = sector_event(config, quarter).occurred;
            const bool zh = sector_event(config, half).occurred;
            row.values = {zq ? 1 : 0, zh ? 1 : 0};
            break;
        }
    }
    return row;
}

int resolve_worker_count(const ExperimentPlan& plan) {
    if (plan.workers > 0) return plan.workers;
    if (const char* env = std::getenv("PERCLAB_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

namespace {

// Runs every slot whose row pointer is still null. Slot order is fixed up
// front, so the result is independent of scheduling.
void run_missing(const ExperimentPlan& plan, const std::vector<CellSpec>& cells,
                 std::vector<RecordRow>& rows, const std::vector<uint8_t>& present) {
    struct Slot {
        const CellSpec* cell;
        long long trial;
        size_t row_index;
    };
    std::vector<Slot> slots;
    size_t base = 0;
    for (const auto& cell : cells) {
        for (long long t = 0; t < cell.trials; ++t)
            if (!present[base + size_t(t)]) slots.push_back({&cell, t, base + size_t(t)});
        base += size_t(cell.trials);
    }
    if (slots.empty()) return;

    const int workers = resolve_worker_count(plan);
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= slots.size() || failed.load()) return;
            try {
                rows[slots[i].row_index] = run_trial(plan, *slots[i].cell, slots[i].trial);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error_message = e.what();
                return;
            }
        }
    };
    if (workers <= 1 || slots.size() == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("run_plan: trial failed: " + error_message);
}

json row_to_json(const Dataset& dataset, const RecordRow& row, const CellSpec& cell) {
    json j;
    j["experiment"] = row.experiment;
    j["cell"] = row.cell;
    j["trial"] = row.trial;
    j["key"] = {row.key.master_seed, row.key.experiment_id, row.key.trial_index};
    json values = json::object();
    const auto cols = columns_for(cell);
    for (size_t i = 0; i < cols.size(); ++i) values[cols[i]] = row.values[i];
    j["values"] = values;
    (void)dataset;
    return j;
}

}  // namespace

Dataset run_plan(const ExperimentPlan& plan) {
    validate_plan(plan);
    Dataset dataset;
    dataset.plan = plan;
    dataset.cells = plan_cells(plan);
    dataset.manifest.artifact_version = kArtifactVersion;
    dataset.manifest.plan_digest = plan_digest(plan);
    dataset.manifest.master_seed = plan.master_seed;
    dataset.manifest.p_used = plan.p();
    dataset.manifest.started_at = iso_now();

    long long total = 0;
    for (const auto& cell : dataset.cells) total += cell.trials;
    dataset.rows.resize(size_t(total));
    std::vector<uint8_t> present(size_t(total), 0);
    run_missing(plan, dataset.cells, dataset.rows, present);

    dataset.manifest.finished_at = iso_now();
    dataset.manifest.row_count = total;
    return dataset;
}

void write_dataset(const Dataset& dataset, const std::string& output_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    const auto path = [&](const char* name) { return (fs::path(output_dir) / name).string(); };

    std::ostringstream jsonl;
    std::map<int, std::ostringstream> csv_by_experiment;
    size_t base = 0;
    for (const auto& cell : dataset.cells) {
        const auto cols = columns_for(cell);
        auto& csv = csv_by_experiment[cell.experiment];
        if (cell.cell == 0) {
            csv << "experiment,cell,type,n,trial";
            for (const auto& c : cols) csv << "," << c;
            csv << "\n";
        }
        for (long long t = 0; t < cell.trials; ++t) {
            const RecordRow& row = dataset.rows[base + size_t(t)];
            jsonl << row_to_json(dataset, row, cell).dump() << "\n";
            csv << cell.experiment << "," << cell.cell << ","
                << experiment_type_name(cell.type) << "," << cell.n << "," << row.trial;
            for (long long v : row.values) csv << "," << v;
            csv << "\n";
        }
        base += size_t(cell.trials);
    }
    write_atomic(path("rows.jsonl"), jsonl.str());
    for (const auto& [exp, os] : csv_by_experiment) {
        const std::string name = "rows_" + std::to_string(exp) + ".csv";
        write_atomic((fs::path(output_dir) / name).string(), os.str());
    }

    // Per-cell aggregate: integer sums of every column.
    std::ostringstream cells_csv;
    cells_csv << "experiment,cell,type,n,trials,column,sum\n";
    base = 0;
    for (const auto& cell : dataset.cells) {
        const auto cols = columns_for(cell);
        std::vector<long long> sums(cols.size(), 0);
        for (long long t = 0; t < cell.trials; ++t) {
            const RecordRow& row = dataset.rows[base + size_t(t)];
            for (size_t i = 0; i < cols.size(); ++i) sums[i] += row.values[i];
        }
        for (size_t i = 0; i < cols.size(); ++i)
            cells_csv << cell.experiment << "," << cell.cell << ","
                      << experiment_type_name(cell.type) << "," << cell.n << ","
                      << cell.trials << "," << cols[i] << "," << sums[i] << "\n";
        base += size_t(cell.trials);
    }
    write_atomic(path("cells.csv"), cells_csv.str());

    json manifest;
    manifest["artifact_version"] = dataset.manifest.artifact_version;
    manifest["plan_digest"] = dataset.manifest.plan_digest;
    manifest["master_seed"] = dataset.manifest.master_seed;
    manifest["p_used"] = dataset.manifest.p_used;
    manifest["started_at"] = dataset.manifest.started_at;
    manifest["finished_at"] = dataset.manifest.finished_at;
    manifest["row_count"] = dataset.manifest.row_count;
    write_atomic(path("manifest.json"), manifest.dump(2) + "\n");
    write_atomic(path("plan.txt"), serialize_plan(dataset.plan));
}

Dataset load_dataset(const std::string& output_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(output_dir);
    std::ifstream plan_in(dir / "plan.txt");
    if (!plan_in) throw std::runtime_error("load_dataset: missing plan.txt in " + output_dir);
    std::stringstream plan_text;
    plan_text << plan_in.rdbuf();
    Dataset dataset;
    dataset.plan = parse_plan(plan_text.str());
    dataset.cells = plan_cells(dataset.plan);

    std::ifstream manifest_in(dir / "manifest.json");
    if (!manifest_in)
        throw std::runtime_error("load_dataset: missing manifest.json in " + output_dir);
    json manifest = json::parse(manifest_in);
    dataset.manifest.artifact_version = manifest.value("artifact_version", "");
    if (dataset.manifest.artifact_version != kArtifactVersion)
        throw std::runtime_error("load_dataset: artifact version mismatch");
    dataset.manifest.plan_digest = manifest.value("plan_digest", uint64_t(0));
    dataset.manifest.master_seed = manifest.value("master_seed", uint64_t(0));
    dataset.manifest.p_used = manifest.value("p_used", 0.0);
    dataset.manifest.started_at = manifest.value("started_at", "");
    dataset.manifest.finished_at = manifest.value("finished_at", "");
    dataset.manifest.row_count = manifest.value("row_count", 0LL);

    long long total = 0;
    std::vector<size_t> bases;
    for (const auto& cell : dataset.cells) {
        bases.push_back(size_t(total));
        total += cell.trials;
    }
    dataset.rows.resize(size_t(total));

    std::ifstream rows_in(dir / "rows.jsonl");
    if (!rows_in) throw std::runtime_error("load_dataset: missing rows.jsonl in " + output_dir);
    std::string line;
    long long seen = 0;
    while (std::getline(rows_in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        RecordRow row;
        row.experiment = j.at("experiment").get<int>();
        row.cell = j.at("cell").get<int>();
        row.trial = j.at("trial").get<long long>();
        const auto& key = j.at("key");
        row.key = {key.at(0).get<uint64_t>(), key.at(1).get<uint32_t>(),
                   key.at(2).get<uint64_t>()};

        size_t cell_index = 0;
        bool found = false;
        for (size_t i = 0; i < dataset.cells.size(); ++i)
            if (dataset.cells[i].experiment == row.experiment &&
                dataset.cells[i].cell == row.cell) {
                cell_index = i;
                found = true;
                break;
            }
        if (!found || row.trial < 0 || row.trial >= dataset.cells[cell_index].trials)
            throw std::runtime_error("load_dataset: row outside the plan grid");
        const auto cols = columns_for(dataset.cells[cell_index]);
        const auto& values = j.at("values");
        row.values.reserve(cols.size());
        for (const auto& c : cols) row.values.push_back(values.at(c).get<long long>());
        dataset.rows[bases[cell_index] + size_t(row.trial)] = std::move(row);
        ++seen;
    }
    if (seen != dataset.manifest.row_count)
        throw std::runtime_error("load_dataset: row count does not match manifest");
    return dataset;
}

Dataset run_plan_to_dir(const ExperimentPlan& plan, const std::string& output_dir) {
    validate_plan(plan);
    namespace fs = std::filesystem;

    Dataset dataset;
    dataset.plan = plan;
    dataset.cells = plan_cells(plan);
    dataset.manifest.artifact_version = kArtifactVersion;
    dataset.manifest.plan_digest = plan_digest(plan);
    dataset.manifest.master_seed = plan.master_seed;
    dataset.manifest.p_used = plan.p();
    dataset.manifest.started_at = iso_now();

    long long total = 0;
    std::vector<size_t> bases;
    for (const auto& cell : dataset.cells) {
        bases.push_back(size_t(total));
        total += cell.trials;
    }
    dataset.rows.resize(size_t(total));
    std::vector<uint8_t> present(size_t(total), 0);

    // Resume only when the existing output belongs to the same plan.
    if (fs::exists(fs::path(output_dir) / "manifest.json")) {
        try {
            Dataset prior = load_dataset(output_dir);
            if (prior.manifest.plan_digest == dataset.manifest.plan_digest) {
                size_t prior_base = 0, base = 0;
                for (size_t i = 0; i < dataset.cells.size(); ++i) {
                    const auto& cell = dataset.cells[i];
                    for (long long t = 0; t < cell.trials; ++t) {
                        RecordRow& prior_row = prior.rows[prior_base + size_t(t)];
                        if (!prior_row.values.empty()) {
                            dataset.rows[base + size_t(t)] = std::move(prior_row);
                            present[base + size_t(t)] = 1;
                        }
                    }
                    prior_base += size_t(cell.trials);
                    base += size_t(cell.trials);
                }
            }
        } catch (const std::exception&) {
            // Unreadable or foreign output; recompute everything.
        }
    }

    run_missing(plan, dataset.cells, dataset.rows, present);
    dataset.manifest.finished_at = iso_now();
    dataset.manifest.row_count = total;
    write_dataset(dataset, output_dir);
    return dataset;
}

}  // namespace perc

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "perc/features.hpp"
#include "perc/oracle.hpp"
#include "perc/report.hpp"
#include "perc/runner.hpp"

namespace {

perc::ExperimentPlan load_plan_file(const std::string& path, bool print_warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file " + path);
    std::stringstream text;
    text << in.rdbuf();
    std::vector<std::string> warnings;
    perc::ExperimentPlan plan = perc::parse_plan(text.str(), &warnings);
    if (print_warnings)
        for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return plan;
}

perc::LatticeKind lattice_from_name(const std::string& name) {
    if (name == "triangular") return perc::LatticeKind::Triangular;
    if (name == "square-site") return perc::LatticeKind::SquareSite;
    throw std::runtime_error("unknown lattice: " + name);
}

int cmd_plan_validate(const std::string& path) {
    const auto plan = load_plan_file(path, true);
    perc::validate_plan(plan);
    const auto cells = perc::plan_cells(plan);
    long long trials = 0;
    for (const auto& c : cells) trials += c.trials;
    std::cout << "plan " << plan.id << ": valid\n";
    std::cout << "  lattice: "
              << (plan.lattice == perc::LatticeKind::Triangular ? "triangular" : "square-site")
              << "  p: " << plan.p() << "  master_seed: " << plan.master_seed << "\n";
    std::cout << "  experiments: " << plan.experiments.size() << "  cells: " << cells.size()
              << "  total trials: " << trials << "\n";
    std::cout << "  digest: " << perc::plan_digest(plan) << "\n";
    return 0;
}

int cmd_run(const std::string& path, const std::string& output_override, int workers_override) {
    auto plan = load_plan_file(path, true);
    if (!output_override.empty()) plan.output_dir = output_override;
    if (workers_override > 0) plan.workers = workers_override;
    perc::validate_plan(plan);
    const auto dataset = perc::run_plan_to_dir(plan, plan.output_dir);
    std::cout << "plan " << plan.id << ": " << dataset.manifest.row_count << " rows -> "
              << plan.output_dir << "\n";
    return 0;
}

int cmd_report(const std::string& data_dir, const std::string& claim_name,
               const std::string& json_path) {
    const auto dataset = perc::load_dataset(data_dir);
    std::vector<perc::ClaimReport> reports;
    if (claim_name.empty()) {
        reports = perc::report_all(dataset);
    } else {
        reports.push_back(perc::report_claim(dataset, perc::claim_from_name(claim_name)));
    }
    bool all_pass = true;
    std::ostringstream json;
    json << "[\n";
    for (size_t i = 0; i < reports.size(); ++i) {
        std::cout << reports[i].text << "\n";
        if (!reports[i].pass) all_pass = false;
        json << reports[i].summary_json << (i + 1 < reports.size() ? ",\n" : "\n");
    }
    json << "]\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot write " + json_path);
        out << json.str();
    }
    std::cout << (all_pass ? "all claims pass" : "some claims fail") << "\n";
    return all_pass ? 0 : 1;
}

int cmd_oracle(const std::string& lattice_name, int radius, int configs, uint64_t seed) {
    const perc::LatticeKind lattice = lattice_from_name(lattice_name);
    const perc::BoxRegion box{{0, 0}, radius};
    const double p = perc::critical_p(lattice);
    long long pivotal_mismatch = 0, lowest_mismatch = 0, pioneer_mismatch = 0;
    for (int t = 0; t < configs; ++t) {
        const perc::TrialKey key{seed, 0, uint64_t(t)};
        const perc::Configuration config = perc::sample(lattice, box, p, key);
        const auto report = perc::pivotal_sites(config);
        if (report.pivotal_sites != perc::flip_pivotal_oracle(config)) ++pivotal_mismatch;
        if (perc::lowest_crossing_sites(config) != perc::lowest_crossing_oracle(config))
            ++lowest_mismatch;
        if (lattice == perc::LatticeKind::Triangular) {
            const auto walk = perc::exploration_walk(config);
            if (walk.pioneering != perc::pioneering_oracle(config)) ++pioneer_mismatch;
        }
    }
    std::cout << "oracle cross-check on B(" << radius << "), " << configs << " configurations, "
              << lattice_name << ":\n";
    std::cout << "  pivotal mismatches:   " << pivotal_mismatch << "\n";
    std::cout << "  lowest-crossing mismatches: " << lowest_mismatch << "\n";
    if (lattice == perc::LatticeKind::Triangular)
        std::cout << "  pioneering mismatches: " << pioneer_mismatch << "\n";
    if (radius <= 1) {
        std::cout << "  exact crossing probability: "
                  << perc::exact_crossing_probability(lattice, radius, p) << "\n";
    }
    return pivotal_mismatch + lowest_mismatch + pioneer_mismatch == 0 ? 0 : 1;
}

int cmd_dump_config(const std::string& lattice_name, int radius, double p, uint64_t seed,
                    uint32_t experiment, uint64_t trial) {
    const perc::LatticeKind lattice = lattice_from_name(lattice_name);
    if (p < 0.0) p = perc::critical_p(lattice);
    const perc::Configuration config =
        perc::sample(lattice, {{0, 0}, radius}, p, {seed, experiment, trial});
    std::cout << config.serialize();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perclab: critical percolation crossing laboratory"};
    app.require_subcommand(1);

    auto* plan_cmd = app.add_subcommand("plan", "plan file utilities");
    plan_cmd->require_subcommand(1);
    std::string plan_path;
    auto* validate_cmd = plan_cmd->add_subcommand("validate", "parse and validate a plan file");
    validate_cmd->add_option("file", plan_path, "plan file")->required();

    std::string run_path, run_output;
    int run_workers = 0;
    auto* run_cmd = app.add_subcommand("run", "execute a plan");
    run_cmd->add_option("file", run_path, "plan file")->required();
    run_cmd->add_option("--output", run_output, "override output directory");
    run_cmd->add_option("--workers", run_workers, "override worker count");

    std::string report_dir, report_claim, report_json;
    auto* report_cmd = app.add_subcommand("report", "evaluate claims against a dataset");
    report_cmd->add_option("dir", report_dir, "dataset directory")->required();
    report_cmd->add_option("--claim", report_claim,
                           "single claim (theorem1, lemma1, lemma2, corollary1, x-moments, "
                           "size-moments, stationarity)");
    report_cmd->add_option("--json", report_json, "write machine-readable summaries here");

    std::string oracle_lattice = "triangular";
    int oracle_radius = 4, oracle_configs = 200;
    uint64_t oracle_seed = 12345;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force cross-checks on small boxes");
    oracle_cmd->add_option("--lattice", oracle_lattice, "triangular or square-site");
    oracle_cmd->add_option("--radius", oracle_radius, "box radius");
    oracle_cmd->add_option("--configs", oracle_configs, "number of random configurations");
    oracle_cmd->add_option("--seed", oracle_seed, "master seed");

    std::string dump_lattice = "triangular";
    int dump_radius = 4;
    double dump_p = -1.0;
    uint64_t dump_seed = 1, dump_trial = 0;
    uint32_t dump_experiment = 0;
    auto* dump_cmd = app.add_subcommand("dump-config", "print one sampled configuration");
    dump_cmd->add_option("--lattice", dump_lattice, "triangular or square-site");
    dump_cmd->add_option("--radius", dump_radius, "box radius");
    dump_cmd->add_option("--p", dump_p, "open probability (default: critical)");
    dump_cmd->add_option("--seed", dump_seed, "master seed");
    dump_cmd->add_option("--experiment", dump_experiment, "experiment id");
    dump_cmd->add_option("--trial", dump_trial, "trial index");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) return cmd_plan_validate(plan_path);
        if (*run_cmd) return cmd_run(run_path, run_output, run_workers);
        if (*report_cmd) return cmd_report(report_dir, report_claim, report_json);
        if (*oracle_cmd)
            return cmd_oracle(oracle_lattice, oracle_radius, oracle_configs, oracle_seed);
        if (*dump_cmd)
            return cmd_dump_config(dump_lattice, dump_radius, dump_p, dump_seed,
                                   dump_experiment, dump_trial);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

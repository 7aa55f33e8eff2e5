// Acceptance suite: one line per criterion, nonzero exit on any failure.
// The two property criteria run first and gate the statistical ones.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "perc/features.hpp"
#include "perc/oracle.hpp"
#include "perc/report.hpp"
#include "perc/runner.hpp"

using namespace perc;

namespace {

constexpr uint64_t kMasterSeed = 20240823;

int failures = 0;
bool gate_open = true;

void line(int criterion, const std::string& label, bool pass, const std::string& note = "") {
    std::cout << "criterion " << criterion << " (" << label << "): "
              << (pass ? "PASS" : "FAIL");
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

void skipped(int criterion, const std::string& label) {
    std::cout << "criterion " << criterion << " (" << label << "): FAIL  [skipped: gate failed]"
              << std::endl;
    ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_claim(const Dataset& dataset, Claim claim, bool* pass) {
    const ClaimReport report = report_claim(dataset, claim);
    *pass = report.pass;
    if (!report.pass) std::cerr << report.text << std::endl;
    std::ostringstream note;
    note << "verdict: " << report.verdict;
    return note.str();
}

Dataset run_one(ExperimentType type, std::vector<int> n_values, std::vector<int> m_values,
                int rho, std::vector<int> nu_values, int l, long long trials) {
    ExperimentPlan plan;
    plan.id = "acceptance";
    plan.lattice = LatticeKind::Triangular;
    plan.master_seed = kMasterSeed;
    plan.workers = 0;
    ExperimentSpec exp;
    exp.type = type;
    exp.n_values = std::move(n_values);
    exp.m_values = std::move(m_values);
    exp.rho = rho;
    exp.nu_values = std::move(nu_values);
    exp.l = l;
    exp.trials = trials;
    plan.experiments = {exp};
    return run_plan(plan);
}

bool criterion1_oracles() {
    const int configs = 1000;
    for (LatticeKind lattice : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        const BoxRegion box{{0, 0}, 4};
        for (int t = 0; t < configs; ++t) {
            const Configuration config =
                sample(lattice, box, critical_p(lattice), {kMasterSeed, 1, uint64_t(t)});
            if (pivotal_sites(config).pivotal_sites != flip_pivotal_oracle(config)) return false;
            if (lowest_crossing_sites(config) != lowest_crossing_oracle(config)) return false;
            if (lattice == LatticeKind::Triangular &&
                exploration_walk(config).pioneering != pioneering_oracle(config))
                return false;
        }
    }
    return true;
}

bool criterion2_duality() {
    const int configs = 10000;
    for (LatticeKind lattice : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        const BoxRegion box{{0, 0}, 6};
        for (int t = 0; t < configs; ++t) {
            const Configuration config =
                sample(lattice, box, critical_p(lattice), {kMasterSeed, 2, uint64_t(t)});
            const bool open_lr =
                has_crossing(config, SiteColor::Open, CrossDirection::Horizontal).exists;
            const bool closed_tb =
                has_crossing(config, SiteColor::Closed, CrossDirection::Vertical).exists;
            if (open_lr == closed_tb) return false;
        }
    }
    return true;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool criterion10_determinism() {
    ExperimentPlan plan;
    plan.id = "determinism";
    plan.master_seed = kMasterSeed;
    ExperimentSpec blocks;
    blocks.type = ExperimentType::BlockMoments;
    blocks.n_values = {8};
    blocks.m_values = {2, 4};
    blocks.trials = 60;
    ExperimentSpec shoe;
    shoe.type = ExperimentType::Horseshoe;
    shoe.rho = 2;
    shoe.nu_values = {3, 4};
    shoe.trials = 60;
    ExperimentSpec sector;
    sector.type = ExperimentType::SectorPair;
    sector.l = 2;
    sector.n_values = {8};
    sector.trials = 60;
    ExperimentSpec flat;
    flat.type = ExperimentType::Stationarity;
    flat.n_values = {8};
    flat.trials = 40;
    plan.experiments = {blocks, shoe, sector, flat};

    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "perclab-acceptance-determinism";
    fs::remove_all(root);
    std::vector<std::string> rows, cells;
    for (int workers : {1, 4, 16}) {
        plan.workers = workers;
        const fs::path dir = root / ("w" + std::to_string(workers));
        run_plan_to_dir(plan, dir.string());
        rows.push_back(slurp(dir / "rows.jsonl"));
        cells.push_back(slurp(dir / "cells.csv"));
    }
    fs::remove_all(root);
    if (rows[0].empty()) return false;
    return rows[0] == rows[1] && rows[0] == rows[2] && cells[0] == cells[1] &&
           cells[0] == cells[2];
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    const bool c1 = criterion1_oracles();
    line(1, "oracle equivalence on B(4)", c1);
    const bool c2 = criterion2_duality();
    line(2, "crossing duality on B(6)", c2);
    gate_open = c1 && c2;

    if (gate_open) {
        bool pass;
        std::string note;

        const Dataset blocks = run_one(ExperimentType::BlockMoments, {64, 128, 256},
                                       {2, 4, 8, 16, 32}, 0, {}, 0, 20000);
        note = run_claim(blocks, Claim::Theorem1, &pass);
        line(3, "Theorem 1, P(M_n < m) ~ m/n", pass, note);

        const Dataset shoes =
            run_one(ExperimentType::Horseshoe, {}, {}, 3, {5, 6, 7, 8}, 0, 100000);
        note = run_claim(shoes, Claim::Lemma1, &pass);
        line(4, "Lemma 1, horseshoe arm decay", pass, note);

        const Dataset sectors =
            run_one(ExperimentType::SectorPair, {32, 64, 128}, {}, 0, {}, 8, 100000);
        note = run_claim(sectors, Claim::Lemma2, &pass);
        line(5, "Lemma 2, sector ratio decay", pass, note);

        note = run_claim(blocks, Claim::XMoments, &pass);
        line(6, "Eq. (2.8)/(2.12), X moments", pass, note);

        const Dataset strips =
            run_one(ExperimentType::StripDensity, {256}, {8, 16, 32, 64}, 0, {}, 0, 30000);
        note = run_claim(strips, Claim::Corollary1, &pass);
        line(7, "Corollary 1, E(Q_{n,m}) growth", pass, note);

        const Dataset sizes =
            run_one(ExperimentType::SizeMoments, {32, 64, 128, 256}, {}, 0, {}, 0, 5000);
        note = run_claim(sizes, Claim::SizeMoments, &pass);
        line(8, "Eq. (1.2), crossing size moments", pass, note);

        const Dataset heights =
            run_one(ExperimentType::Stationarity, {128}, {}, 0, {}, 0, 50000);
        note = run_claim(heights, Claim::Stationarity, &pass);
        line(9, "Section 6, height stationarity", pass, note);
    } else {
        skipped(3, "Theorem 1, P(M_n < m) ~ m/n");
        skipped(4, "Lemma 1, horseshoe arm decay");
        skipped(5, "Lemma 2, sector ratio decay");
        skipped(6, "Eq. (2.8)/(2.12), X moments");
        skipped(7, "Corollary 1, E(Q_{n,m}) growth");
        skipped(8, "Eq. (1.2), crossing size moments");
        skipped(9, "Section 6, height stationarity");
    }

    line(10, "worker-count determinism", criterion10_determinism());

    std::printf("acceptance: %d/10 criteria passed in %.1f s\n", 10 - failures,
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}

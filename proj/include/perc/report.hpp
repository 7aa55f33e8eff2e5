#pragma once

#include <string>
#include <vector>

#include "perc/runner.hpp"

namespace perc {

enum class Claim {
    Theorem1,     // P(M_n < m) comparable to m/n, uniformly
    Lemma1,       // horseshoe decay exponent kappa(kappa+1)/6
    Lemma2,       // sector ratio zeta(pi/2)/zeta(pi) decays like (n/l)^-alpha
    Corollary1,   // E(Q_{n,m}) grows like m^{7/4} at fixed n
    XMoments,     // E(X), E(X^2) comparable to m/n
    SizeMoments,  // E|L_n|, E|F_n|, E|Q_n| power laws in n
    Stationarity, // flat height histogram of the highest crossing's lowest site
};

const char* claim_name(Claim claim);
Claim claim_from_name(const std::string& name);

// Pass thresholds, pinned to the artifact's acceptance conventions.
struct ReportThresholds {
    double theorem1_slope_low = 0.75, theorem1_slope_high = 1.25;
    double theorem1_band_spread = 8.0;
    double lemma1_two_low = 0.85, lemma1_two_high = 1.15;
    double lemma1_three_low = 1.7, lemma1_three_high = 2.3;
    double lemma2_alpha_min = 0.0;  // slope CI must exclude this
    double corollary1_slope_low = 1.5, corollary1_slope_high = 2.0;
    double xmoments_band_spread = 8.0;
    // Bound on the spread (max/min) of the per-cell quotient E(X^2)/E(X).
    double xmoments_second_over_first = 4.0;
    double size_l_low = 4.0 / 3.0 - 0.15, size_l_high = 4.0 / 3.0 + 0.15;
    double size_f_low = 7.0 / 4.0 - 0.15, size_f_high = 7.0 / 4.0 + 0.15;
    double size_q_low = 3.0 / 4.0 - 0.25, size_q_high = 3.0 / 4.0 + 0.25;
    int stationarity_bins = 16;
    double stationarity_max_over_min = 4.0;
};

struct ClaimReport {
    Claim claim = Claim::Theorem1;
    bool pass = false;
    std::string verdict;       // "pass", "fail", or "inconclusive: ..."
    std::string text;          // tabular human-readable report
    std::string summary_json;  // machine-readable summary
};

// Throws std::invalid_argument when the dataset lacks the claim's observables.
ClaimReport report_claim(const Dataset& dataset, Claim claim,
                         const ReportThresholds& thresholds = {});

// Reports every claim whose observables the dataset provides.
std::vector<ClaimReport> report_all(const Dataset& dataset,
                                    const ReportThresholds& thresholds = {});

}  // namespace perc

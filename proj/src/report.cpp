#include "perc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "perc/stats.hpp"

namespace perc {
namespace {

using nlohmann::json;

const Claim kAllClaims[] = {Claim::Theorem1, Claim::Lemma1,      Claim::Lemma2,
                            Claim::Corollary1, Claim::XMoments,  Claim::SizeMoments,
                            Claim::Stationarity};

struct CellRows {
    const CellSpec* cell;
    const RecordRow* rows;  // cell->trials entries
};

std::vector<CellRows> cells_of_type(const Dataset& dataset, ExperimentType type) {
    std::vector<CellRows> out;
    size_t base = 0;
    for (const auto& cell : dataset.cells) {
        if (cell.type == type) out.push_back({&cell, dataset.rows.data() + base});
        base += size_t(cell.trials);
    }
    return out;
}

size_t column_index(const CellSpec& cell, const std::string& name) {
    const auto cols = columns_for(cell);
    for (size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == name) return i;
    throw std::invalid_argument("report: dataset lacks column " + name);
}

bool in_window(double v, double lo, double hi) { return v >= lo && v <= hi; }

ClaimReport finish(Claim claim, bool pass, const std::string& verdict, std::ostringstream& text,
                   json& summary) {
    ClaimReport rep;
    rep.claim = claim;
    rep.pass = pass;
    rep.verdict = verdict;
    summary["claim"] = claim_name(claim);
    summary["verdict"] = verdict;
    summary["pass"] = pass;
    text << "verdict: " << verdict << "\n";
    rep.text = text.str();
    rep.summary_json = summary.dump(2);
    return rep;
}

json fit_json(const PowerLawFit& fit) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"slope_ci", {fit.slope_ci_low, fit.slope_ci_high}}};
}

ClaimReport report_theorem1(const Dataset& dataset, const ReportThresholds& th) {
    auto groups = cells_of_type(dataset, ExperimentType::BlockMoments);
    {
        auto extra = cells_of_type(dataset, ExperimentType::MinHeight);
        groups.insert(groups.end(), extra.begin(), extra.end());
    }
    if (groups.empty()) throw std::invalid_argument("report: no min-height observations");

    std::ostringstream text;
    json summary;
    json cells = json::array();
    std::vector<std::pair<double, double>> band_pairs;
    bool slopes_ok = true, any_fit = false;
    long long nonzero_cells = 0, zero_cells = 0;

    text << "claim: Theorem 1, P(M_n < m) comparable to m/n\n";
    text << "  n    m   trials  P(M_n<m)   P|crossing  ratio/(m/n)\n";
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        const auto& m_grid = dataset.plan.experiments[cell.experiment].m_values;
        if (m_grid.empty()) continue;
        const size_t crossing_col = column_index(cell, "crossing");
        const size_t mn_col = column_index(cell, "m_n");
        std::vector<PowerLawPoint> points;
        for (int m : m_grid) {
            long long hits = 0, cond_hits = 0, cond_trials = 0;
            for (long long t = 0; t < cell.trials; ++t) {
                const auto& row = g.rows[t];
                const bool below = row.values[mn_col] < m;
                if (below) ++hits;
                if (row.values[crossing_col]) {
                    ++cond_trials;
                    if (below) ++cond_hits;
                }
            }
            const auto est = make_estimate(hits, cell.trials);
            const double reference = double(m) / double(cell.n);
            char line[160];
            std::snprintf(line, sizeof(line), "%5d %4d %8lld  %.6f   %.6f     %.4f\n", cell.n,
                          m, cell.trials, est.p_hat,
                          cond_trials ? double(cond_hits) / double(cond_trials) : 0.0,
                          est.p_hat / reference);
            text << line;
            json jc = {{"n", cell.n},
                       {"m", m},
                       {"trials", cell.trials},
                       {"p_hat", est.p_hat},
                       {"p_hat_conditional",
                        cond_trials ? double(cond_hits) / double(cond_trials) : 0.0},
                       {"wilson", {est.wilson_low, est.wilson_high}},
                       {"reference", reference}};
            if (hits > 0) {
                ++nonzero_cells;
                band_pairs.push_back({est.p_hat, reference});
                points.push_back(bernoulli_point(double(m), est));
            } else {
                ++zero_cells;
                jc["flag"] = "zero successes, excluded from fit and band";
            }
            cells.push_back(jc);
        }
        if (points.size() >= 3) {
            const auto fit = loglog_fit(points);
            any_fit = true;
            if (!in_window(fit.slope, th.theorem1_slope_low, th.theorem1_slope_high))
                slopes_ok = false;
            text << "  slope at n=" << cell.n << ": " << fit.slope << "  ci ["
                 << fit.slope_ci_low << ", " << fit.slope_ci_high << "]\n";
            json jf = fit_json(fit);
            jf["n"] = cell.n;
            summary["fits"].push_back(jf);
        }
    }
    summary["cells"] = cells;
    if (nonzero_cells == 0)
        return finish(Claim::Theorem1, false, "inconclusive: zero cells", text, summary);
    if (!any_fit)
        return finish(Claim::Theorem1, false, "inconclusive: too few nonzero cells for a fit",
                      text, summary);
    const auto band = ratio_band_check(band_pairs);
    summary["band_spread"] = band.spread;
    text << "  band spread: " << band.spread << " (limit " << th.theorem1_band_spread << ")\n";
    if (zero_cells > 0) text << "  flagged " << zero_cells << " zero-success cells\n";
    const bool pass = slopes_ok && band.spread <= th.theorem1_band_spread;
    return finish(Claim::Theorem1, pass, pass ? "pass" : "fail", text, summary);
}

ClaimReport report_lemma1(const Dataset& dataset, const ReportThresholds& th) {
    const auto groups = cells_of_type(dataset, ExperimentType::Horseshoe);
    if (groups.empty()) throw std::invalid_argument("report: no horseshoe observations");

    std::ostringstream text;
    json summary;
    text << "claim: Lemma 1, horseshoe decay (2^rho/2^nu)^(kappa(kappa+1)/6)\n";
    text << "  rho  nu   trials   P(J2)      P(J3)\n";
    struct ArmSeries {
        const char* column;
        double target, lo, hi;
        std::vector<PowerLawPoint> points;
        long long zero_cells = 0;
    };
    ArmSeries series[2] = {{"j2", 1.0, th.lemma1_two_low, th.lemma1_two_high, {}, 0},
                           {"j3", 2.0, th.lemma1_three_low, th.lemma1_three_high, {}, 0}};
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        const double scale = std::pow(2.0, cell.rho - cell.nu);
        double shown[2] = {0, 0};
        for (int s = 0; s < 2; ++s) {
            const size_t col = column_index(cell, series[s].column);
            long long hits = 0;
            for (long long t = 0; t < cell.trials; ++t) hits += g.rows[t].values[col];
            const auto est = make_estimate(hits, cell.trials);
            shown[s] = est.p_hat;
            if (hits > 0)
                series[s].points.push_back(bernoulli_point(scale, est));
            else
                ++series[s].zero_cells;
            json jc = {{"rho", cell.rho}, {"nu", cell.nu},     {"arm", series[s].column},
                       {"trials", cell.trials}, {"p_hat", est.p_hat},
                       {"wilson", {est.wilson_low, est.wilson_high}}};
            summary["cells"].push_back(jc);
        }
        char line[120];
        std::snprintf(line, sizeof(line), "  %3d %3d %8lld   %.6f   %.6f\n", cell.rho, cell.nu,
                      cell.trials, shown[0], shown[1]);
        text << line;
    }
    bool pass = true;
    bool any_zero_series = false;
    for (auto& s : series) {
        if (s.points.size() < 3) {
            any_zero_series = true;
            text << "  " << s.column << ": too few nonzero cells for a fit";
            if (s.zero_cells) text << " (" << s.zero_cells << " zero cells)";
            text << "\n";
            continue;
        }
        const auto fit = loglog_fit(s.points);
        // Scale < 1 shrinks with nu, so the decay exponent is the raw slope.
        const bool window = in_window(fit.slope, s.lo, s.hi);
        // The CI must reach the tolerance window around the target.
        const bool ci_hit = fit.slope_ci_low <= s.hi && fit.slope_ci_high >= s.lo;
        if (!window || !ci_hit) pass = false;
        text << "  " << s.column << " exponent: " << fit.slope << "  ci [" << fit.slope_ci_low
             << ", " << fit.slope_ci_high << "]  target " << s.target << "\n";
        json jf = fit_json(fit);
        jf["arm"] = s.column;
        jf["target"] = s.target;
        summary["fits"].push_back(jf);
    }
    if (any_zero_series)
        return finish(Claim::Lemma1, false, "inconclusive: zero cells", text, summary);
    return finish(Claim::Lemma1, pass, pass ? "pass" : "fail", text, summary);
}

ClaimReport report_lemma2(const Dataset& dataset, const ReportThresholds& th) {
    const auto groups = cells_of_type(dataset, ExperimentType::SectorPair);
    if (groups.empty()) throw std::invalid_argument("report: no sector observations");

    std::ostringstream text;
    json summary;
    text << "claim: Lemma 2, zeta(pi/2)/zeta(pi) decays like (n/l)^-alpha\n";
    text << "    n    l   trials   zeta(pi/2)  zeta(pi)    ratio\n";
    std::vector<PowerLawPoint> points;
    std::vector<double> ratios;
    bool zero_cell = false;
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        const size_t qcol = column_index(cell, "zeta_quarter");
        const size_t hcol = column_index(cell, "zeta_half");
        long long qhits = 0, hhits = 0;
        for (long long t = 0; t < cell.trials; ++t) {
            qhits += g.rows[t].values[qcol];
            hhits += g.rows[t].values[hcol];
        }
        const auto qest = make_estimate(qhits, cell.trials);
        const auto hest = make_estimate(hhits, cell.trials);
        char line[160];
        const double ratio = hest.p_hat > 0 ? qest.p_hat / hest.p_hat : 0.0;
        std::snprintf(line, sizeof(line), "  %5d %4d %8lld   %.6f    %.6f   %.6f\n", cell.n,
                      cell.l, cell.trials, qest.p_hat, hest.p_hat, ratio);
        text << line;
        summary["cells"].push_back({{"n", cell.n},
                                    {"l", cell.l},
                                    {"trials", cell.trials},
                                    {"zeta_quarter", qest.p_hat},
                                    {"zeta_half", hest.p_hat},
                                    {"ratio", ratio}});
        if (qhits == 0 || hhits == 0) {
            zero_cell = true;
            continue;
        }
        ratios.push_back(ratio);
        PowerLawPoint p;
        p.scale = double(cell.n) / double(cell.l);
        p.value = ratio;
        p.weight = double(qhits);  // the scarcer arm pair dominates the noise
        points.push_back(p);
    }
    if (points.empty())
        return finish(Claim::Lemma2, false, "inconclusive: zero cells", text, summary);
    bool decreasing = true;
    for (size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] >= ratios[i - 1]) decreasing = false;
    if (points.size() < 3) {
        text << "  too few usable cells for a fit\n";
        return finish(Claim::Lemma2, false, "inconclusive: too few cells", text, summary);
    }
    const auto fit = loglog_fit(points);
    const double alpha = -fit.slope;
    const bool ci_excludes_zero = fit.slope_ci_high < -th.lemma2_alpha_min;
    text << "  alpha: " << alpha << "  slope ci [" << fit.slope_ci_low << ", "
         << fit.slope_ci_high << "]  strictly decreasing: " << (decreasing ? "yes" : "no")
         << "\n";
    summary["fit"] = fit_json(fit);
    summary["alpha"] = alpha;
    summary["strictly_decreasing"] = decreasing;
    if (zero_cell) text << "  flagged zero-success cells\n";
    const bool pass = decreasing && alpha > th.lemma2_alpha_min && ci_excludes_zero;
    return finish(Claim::Lemma2, pass, pass ? "pass" : "fail", text, summary);
}

ClaimReport report_corollary1(const Dataset& dataset, const ReportThresholds& th) {
    const auto groups = cells_of_type(dataset, ExperimentType::StripDensity);
    if (groups.empty()) throw std::invalid_argument("report: no strip-density observations");

    std::ostringstream text;
    json summary;
    text << "claim: Corollary 1, E(Q_{n,m}) grows like m^(7/4) at fixed n\n";
    text << "    n    m   trials   E(Q_{n,m})\n";
    bool pass = true, any_fit = false;
    long long nonzero = 0;
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        std::vector<PowerLawPoint> points;
        for (int m : cell.m_values) {
            const size_t col = column_index(cell, "q_m" + std::to_string(m));
            long long sum = 0;
            for (long long t = 0; t < cell.trials; ++t) sum += g.rows[t].values[col];
            const double mean = double(sum) / double(cell.trials);
            char line[120];
            std::snprintf(line, sizeof(line), "  %5d %4d %8lld   %.6f\n", cell.n, m,
                          cell.trials, mean);
            text << line;
            summary["cells"].push_back(
                {{"n", cell.n}, {"m", m}, {"trials", cell.trials}, {"mean", mean}});
            if (sum > 0) {
                ++nonzero;
                PowerLawPoint p;
                p.scale = double(m);
                p.value = mean;
                p.weight = double(cell.trials);
                points.push_back(p);
            }
        }
        if (points.size() >= 3) {
            const auto fit = loglog_fit(points);
            any_fit = true;
            if (!in_window(fit.slope, th.corollary1_slope_low, th.corollary1_slope_high))
                pass = false;
            text << "  slope at n=" << cell.n << ": " << fit.slope << "  ci ["
                 << fit.slope_ci_low << ", " << fit.slope_ci_high << "]\n";
            json jf = fit_json(fit);
            jf["n"] = cell.n;
            summary["fits"].push_back(jf);
        }
    }
    if (nonzero == 0)
        return finish(Claim::Corollary1, false, "inconclusive: zero cells", text, summary);
    if (!any_fit)
        return finish(Claim::Corollary1, false, "inconclusive: too few cells for a fit", text,
                      summary);
    return finish(Claim::Corollary1, pass, pass ? "pass" : "fail", text, summary);
}

ClaimReport report_xmoments(const Dataset& dataset, const ReportThresholds& th) {
    const auto groups = cells_of_type(dataset, ExperimentType::BlockMoments);
    if (groups.empty()) throw std::invalid_argument("report: no block-moment observations");

    std::ostringstream text;
    json summary;
    text << "claim: Eq. (2.8)/(2.12), E(X) and E(X^2) comparable to m/n\n";
    text << "    n    m   trials   E(X)       E(X^2)     E(X^2)/E(X)\n";
    std::vector<std::pair<double, double>> first_band, second_band;
    double worst_ratio = 0.0;
    double best_ratio = 0.0;
    long long zero_cells = 0, nonzero = 0;
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        for (int m : cell.m_values) {
            const size_t col = column_index(cell, "x_m" + std::to_string(m));
            long long sum = 0, sumsq = 0;
            for (long long t = 0; t < cell.trials; ++t) {
                const long long x = g.rows[t].values[col];
                sum += x;
                sumsq += x * x;
            }
            const double mean = double(sum) / double(cell.trials);
            const double meansq = double(sumsq) / double(cell.trials);
            const double reference = double(m) / double(cell.n);
            const double moment_ratio = sum > 0 ? meansq / mean : 0.0;
            char line[160];
            std::snprintf(line, sizeof(line), "  %5d %4d %8lld   %.6f   %.6f   %.4f\n", cell.n,
                          m, cell.trials, mean, meansq, moment_ratio);
            text << line;
            summary["cells"].push_back({{"n", cell.n},
                                        {"m", m},
                                        {"trials", cell.trials},
                                        {"mean", mean},
                                        {"mean_sq", meansq},
                                        {"reference", reference}});
            if (sum == 0) {
                ++zero_cells;
                continue;
            }
            ++nonzero;
            first_band.push_back({mean, reference});
            second_band.push_back({meansq, reference});
            worst_ratio = std::max(worst_ratio, moment_ratio);
            best_ratio = best_ratio == 0.0 ? moment_ratio : std::min(best_ratio, moment_ratio);
        }
    }
    if (nonzero == 0)
        return finish(Claim::XMoments, false, "inconclusive: zero cells", text, summary);
    const auto band1 = ratio_band_check(first_band);
    const auto band2 = ratio_band_check(second_band);
    // Boundedness of E(X^2)/E(X) across the grid is checked as a ratio band on
    // the per-cell quotient, matching how the moment comparisons themselves
    // operationalize "bounded by constants".
    const double ratio_spread = best_ratio > 0.0 ? worst_ratio / best_ratio : 0.0;
    text << "  E(X) band spread: " << band1.spread << "  E(X^2) band spread: " << band2.spread
         << "\n  E(X^2)/E(X) range: [" << best_ratio << ", " << worst_ratio
         << "]  spread: " << ratio_spread << "\n";
    if (zero_cells > 0) text << "  flagged " << zero_cells << " zero cells\n";
    summary["first_moment_spread"] = band1.spread;
    summary["second_moment_spread"] = band2.spread;
    summary["max_second_over_first"] = worst_ratio;
    summary["second_over_first_spread"] = ratio_spread;
    const bool pass = band1.spread <= th.xmoments_band_spread &&
                      band2.spread <= th.xmoments_band_spread &&
                      ratio_spread <= th.xmoments_second_over_first;
    return finish(Claim::XMoments, pass, pass ? "pass" : "fail", text, summary);
}

ClaimReport report_size_moments(const Dataset& dataset, const ReportThresholds& th) {
    const auto groups = cells_of_type(dataset, ExperimentType::SizeMoments);
    if (groups.empty()) throw std::invalid_argument("report: no size-moment observations");

    std::ostringstream text;
    json summary;
    text << "claim: Eq. (1.2) first moments, E|L_n|, E|F_n|, E|Q_n| power laws in n\n";
    text << "    n   trials   E|L_n|       E|F_n|       E|Q_n|\n";
    struct Series {
        const char* column;
        const char* label;
        double lo, hi;
        std::vector<PowerLawPoint> points;
    };
    Series series[3] = {{"l_size", "L", th.size_l_low, th.size_l_high, {}},
                        {"f_size", "F", th.size_f_low, th.size_f_high, {}},
                        {"q_size", "Q", th.size_q_low, th.size_q_high, {}}};
    const bool skip_pioneers = dataset.plan.lattice != LatticeKind::Triangular;
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        double means[3] = {0, 0, 0};
        for (int s = 0; s < 3; ++s) {
            const size_t col = column_index(cell, series[s].column);
            long long sum = 0;
            for (long long t = 0; t < cell.trials; ++t) sum += g.rows[t].values[col];
            means[s] = double(sum) / double(cell.trials);
            if (sum > 0) {
                PowerLawPoint p;
                p.scale = double(cell.n);
                p.value = means[s];
                p.weight = double(cell.trials);
                series[s].points.push_back(p);
            }
        }
        char line[160];
        std::snprintf(line, sizeof(line), "  %5d %8lld   %10.3f   %10.3f   %10.3f\n", cell.n,
                      cell.trials, means[0], means[1], means[2]);
        text << line;
        summary["cells"].push_back({{"n", cell.n},
                                    {"trials", cell.trials},
                                    {"l_mean", means[0]},
                                    {"f_mean", means[1]},
                                    {"q_mean", means[2]}});
    }
    bool pass = true, any_zero = false;
    for (int s = 0; s < 3; ++s) {
        if (s == 1 && skip_pioneers) {
            text << "  F: skipped (exploration walk is triangular-only)\n";
            continue;
        }
        if (series[s].points.size() < 3) {
            any_zero = true;
            text << "  " << series[s].label << ": too few nonzero cells for a fit\n";
            continue;
        }
        const auto fit = loglog_fit(series[s].points);
        if (!in_window(fit.slope, series[s].lo, series[s].hi)) pass = false;
        text << "  " << series[s].label << " exponent: " << fit.slope << "  ci ["
             << fit.slope_ci_low << ", " << fit.slope_ci_high << "]  window ["
             << series[s].lo << ", " << series[s].hi << "]\n";
        json jf = fit_json(fit);
        jf["series"] = series[s].label;
        summary["fits"].push_back(jf);
    }
    if (any_zero)
        return finish(Claim::SizeMoments, false, "inconclusive: zero cells", text, summary);
    return finish(Claim::SizeMoments, pass, pass ? "pass" : "fail", text, summary);
}

ClaimReport report_stationarity(const Dataset& dataset, const ReportThresholds& th) {
    const auto groups = cells_of_type(dataset, ExperimentType::Stationarity);
    if (groups.empty()) throw std::invalid_argument("report: no stationarity observations");

    std::ostringstream text;
    json summary;
    text << "claim: height histogram of the highest crossing's lowest site is flat\n";
    bool pass = true, any_data = false;
    for (const auto& g : groups) {
        const auto& cell = *g.cell;
        const size_t crossing_col = column_index(cell, "crossing");
        const size_t h_col = column_index(cell, "h");
        const int half = cell.n / 2;
        const int span = 2 * half + 1;
        const int bins = th.stationarity_bins;
        std::vector<long long> counts(size_t(bins), 0);
        long long in_band = 0;
        for (long long t = 0; t < cell.trials; ++t) {
            if (!g.rows[t].values[crossing_col]) continue;
            const long long h = g.rows[t].values[h_col];
            if (h < -half || h > half) continue;
            const int bin = int((h + half) * bins / span);
            ++counts[size_t(bin)];
            ++in_band;
        }
        if (in_band == 0) continue;
        any_data = true;
        const long long max_count = *std::max_element(counts.begin(), counts.end());
        const long long min_count = *std::min_element(counts.begin(), counts.end());
        const double ratio =
            min_count > 0 ? double(max_count) / double(min_count)
                          : std::numeric_limits<double>::infinity();
        text << "  n=" << cell.n << "  trials=" << cell.trials << "  in-band=" << in_band
             << "  bins=" << bins << "  max/min=" << ratio << "\n  counts:";
        for (long long c : counts) text << " " << c;
        text << "\n";
        summary["cells"].push_back({{"n", cell.n},
                                    {"trials", cell.trials},
                                    {"in_band", in_band},
                                    {"counts", counts},
                                    {"max_over_min", ratio}});
        if (!(min_count > 0 && ratio <= th.stationarity_max_over_min)) pass = false;
    }
    if (!any_data)
        return finish(Claim::Stationarity, false, "inconclusive: zero cells", text, summary);
    return finish(Claim::Stationarity, pass, pass ? "pass" : "fail", text, summary);
}

}  // namespace

const char* claim_name(Claim claim) {
    switch (claim) {
        case Claim::Theorem1: return "theorem1";
        case Claim::Lemma1: return "lemma1";
        case Claim::Lemma2: return "lemma2";
        case Claim::Corollary1: return "corollary1";
        case Claim::XMoments: return "x-moments";
        case Claim::SizeMoments: return "size-moments";
        case Claim::Stationarity: return "stationarity";
    }
    return "unknown";
}

Claim claim_from_name(const std::string& name) {
    for (Claim c : kAllClaims)
        if (name == claim_name(c)) return c;
    throw std::invalid_argument("unknown claim: " + name);
}

ClaimReport report_claim(const Dataset& dataset, Claim claim, const ReportThresholds& th) {
    switch (claim) {
        case Claim::Theorem1: return report_theorem1(dataset, th);
        case Claim::Lemma1: return report_lemma1(dataset, th);
        case Claim::Lemma2: return report_lemma2(dataset, th);
        case Claim::Corollary1: return report_corollary1(dataset, th);
        case Claim::XMoments: return report_xmoments(dataset, th);
        case Claim::SizeMoments: return report_size_moments(dataset, th);
        case Claim::Stationarity: return report_stationarity(dataset, th);
    }
    throw std::invalid_argument("report: unknown claim");
}

std::vector<ClaimReport> report_all(const Dataset& dataset, const ReportThresholds& th) {
    std::vector<ClaimReport> out;
    for (Claim c : kAllClaims) {
        try {
            out.push_back(report_claim(dataset, c, th));
        } catch (const std::invalid_argument&) {
            // claim's observables absent from this dataset
        }
    }
    return out;
}

}  // namespace perc

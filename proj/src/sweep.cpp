#include "alphaduplex/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "alphaduplex/errors.hpp"
#include "alphaduplex/parallel.hpp"

namespace alphaduplex {

namespace {

constexpr double kAlphaTol = 1e-13;
constexpr int kMaxBisections = 200;
constexpr double kInvPhi = 0.6180339887498949;

double gap(const SweepRow& r) { return r.ul.throughput - r.dl.throughput; }
double total(const SweepRow& r) { return r.ul.throughput + r.dl.throughput; }

bool balanced(const SweepRow& r, double tol) {
    return std::abs(gap(r)) <= tol * std::max(r.ul.throughput, r.dl.throughput);
}

ThroughputPair pair_of(const SweepRow& r) { return {r.ul.throughput, r.dl.throughput}; }

const SweepRow* find_row(const SweepResult& sr, double alpha) {
    for (const auto& r : sr.rows)
        if (std::abs(r.alpha - alpha) <= kAlphaTol) return &r;
    return nullptr;
}

LinkMetrics to_link_metrics(const EmpiricalMetrics& m) {
    return {m.direction, m.alpha, m.mean_ber, m.bandwidth, m.throughput};
}

// Linear model of the sampled curves between two grid rows.
SweepRow interpolate(const SweepRow& a, const SweepRow& b, double alpha) {
    const double t = (alpha - a.alpha) / (b.alpha - a.alpha);
    auto lerp = [t](double x, double y) { return x + t * (y - x); };
    SweepRow r = a;
    r.alpha = alpha;
    r.ul.alpha = r.dl.alpha = alpha;
    r.ul.ber = lerp(a.ul.ber, b.ul.ber);
    r.dl.ber = lerp(a.dl.ber, b.dl.ber);
    r.ul.bandwidth = lerp(a.ul.bandwidth, b.ul.bandwidth);
    r.dl.bandwidth = lerp(a.dl.bandwidth, b.dl.bandwidth);
    r.ul.throughput = lerp(a.ul.throughput, b.ul.throughput);
    r.dl.throughput = lerp(a.dl.throughput, b.dl.throughput);
    return r;
}

// Bisection on the sign of the gap; lo and hi have opposite signs.
SweepRow bisect(SweepRow lo, SweepRow hi, const RowEvaluator& eval, double tol) {
    const bool lo_positive = gap(lo) > 0.0;
    for (int it = 0; it < kMaxBisections; ++it) {
        if (balanced(lo, tol)) return lo;
        if (balanced(hi, tol)) return hi;
        const double mid = 0.5 * (lo.alpha + hi.alpha);
        if (mid <= lo.alpha || mid >= hi.alpha) break;
        SweepRow m = eval(mid);
        if ((gap(m) > 0.0) == lo_positive)
            lo = std::move(m);
        else
            hi = std::move(m);
    }
    return std::abs(gap(lo)) <= std::abs(gap(hi)) ? lo : hi;
}

// Golden-section search pushing sign * gap upward on [a, b]; stops as soon as
// the gap changes sign relative to `sign`.
SweepRow push_toward_zero(double a, double b, double sign, const RowEvaluator& eval, double alpha_tol) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    SweepRow rc = eval(c), rd = eval(d);
    while (b - a > alpha_tol) {
        if (sign * gap(rc) >= 0.0) return rc;
        if (sign * gap(rd) >= 0.0) return rd;
        if (sign * gap(rc) > sign * gap(rd)) {
            b = d;
            d = c;
            rd = std::move(rc);
            c = b - kInvPhi * (b - a);
            rc = eval(c);
        } else {
            a = c;
            c = d;
            rc = std::move(rd);
            d = a + kInvPhi * (b - a);
            rd = eval(d);
        }
    }
    return sign * gap(rc) > sign * gap(rd) ? rc : rd;
}

void add_crossing(std::vector<SweepRow>& found, SweepRow r) {
    for (const auto& f : found)
        if (std::abs(f.alpha - r.alpha) <= 1e-9) return;
    found.push_back(std::move(r));
}

OperatingPoints assemble(const SweepResult& sr, std::vector<SweepRow> found, const std::optional<RowEvaluator>& eval) {
    if (found.empty()) throw NoCrossingError("T_ul - T_dl keeps one sign over the sweep");
    std::sort(found.begin(), found.end(), [](const SweepRow& a, const SweepRow& b) { return a.alpha < b.alpha; });

    OperatingPoints op;
    const SweepRow* best = &found.front();
    for (const auto& f : found) {
        op.crossings.push_back(f.alpha);
        if (total(f) > total(*best) || (total(f) == total(*best) && f.alpha > best->alpha)) best = &f;
    }
    op.balanced_alpha = best->alpha;
    op.balanced = pair_of(*best);

    auto row_at = [&](double alpha) -> std::optional<SweepRow> {
        if (const SweepRow* r = find_row(sr, alpha)) return *r;
        if (eval) return (*eval)(alpha);
        return std::nullopt;
    };
    const auto hd = row_at(0.0);
    if (!hd) throw DomainError("find_operating_points: sweep lacks alpha = 0");
    op.hd = pair_of(*hd);
    if (const auto fd = row_at(1.0))
        op.fd = pair_of(*fd);
    else
        op.fd = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};

    // Unbalanced point: best downlink among grid rows that keep the HD uplink.
    const double floor_ul = hd->ul.throughput * (1.0 - 1e-9);
    op.unbalanced_alpha = 0.0;
    op.unbalanced = op.hd;
    for (const auto& r : sr.rows) {
        if (r.ul.throughput >= floor_ul && r.dl.throughput > op.unbalanced.dl) {
            op.unbalanced_alpha = r.alpha;
            op.unbalanced = pair_of(r);
        }
    }
    return op;
}

}  // namespace

std::string_view to_string(Source s) { return s == Source::Analytic ? "analytic" : "montecarlo"; }

std::vector<double> make_alpha_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw DomainError("alpha grid: step must be > 0");
    if (!(start <= stop)) throw DomainError("alpha grid: start must be <= stop");
    std::vector<double> grid;
    const double slack = step * 1e-6;
    for (long k = 0;; ++k) {
        double a = start + static_cast<double>(k) * step;
        if (a > stop + slack) break;
        grid.push_back(std::min(a, stop));
    }
    // Snap a near-miss last point to stop exactly.
    if (stop - grid.back() <= slack) grid.back() = stop;
    validate_alpha_grid(grid);
    return grid;
}

void validate_alpha_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("alpha grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw DomainError("alpha grid leaves [0, 1]");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("alpha grid is not strictly increasing");
    }
}

SweepRow analytic_row(double alpha, const SystemParams& p, const FactorProvider& factors) {
    const InterferenceFactors f = factors(alpha);
    return {alpha, ber_uplink(alpha, f, p), ber_downlink(alpha, f, p)};
}

RowEvaluator analytic_evaluator(const SystemParams& p, const FactorProvider& factors) {
    return [p, factors](double alpha) { return analytic_row(alpha, p, factors); };
}

SweepResult sweep_alpha(const SystemParams& p, const FactorProvider& factors, const std::vector<double>& grid,
                        Source source, const SimConfig& sim) {
    validate_alpha_grid(grid);
    p.validate();
    SweepResult sr;
    sr.source = source;
    sr.rows.resize(grid.size());
    if (source == Source::Analytic) {
        parallel_for(grid.size(), [&](std::size_t i) { sr.rows[i] = analytic_row(grid[i], p, factors); });
        return sr;
    }
    const auto metrics = run_campaign(p, sim, grid, factors);
    for (std::size_t i = 0; i < grid.size(); ++i)
        sr.rows[i] = {grid[i], to_link_metrics(metrics[2 * i]), to_link_metrics(metrics[2 * i + 1])};
    return sr;
}

SweepResult sweep_alpha(const SystemParams& p, const PulsePair& pulses, const std::vector<double>& grid,
                        Source source, const SimConfig& sim) {
    return sweep_alpha(p, pulse_factor_provider(p, pulses), grid, source, sim);
}

OperatingPoints find_operating_points(const SweepResult& sr, double refine_tol) {
    if (sr.rows.empty()) throw DomainError("find_operating_points: empty sweep");
    std::vector<SweepRow> found;
    for (std::size_t i = 0; i < sr.rows.size(); ++i) {
        const SweepRow& r = sr.rows[i];
        if (balanced(r, refine_tol)) {
            add_crossing(found, r);
            continue;
        }
        if (i + 1 == sr.rows.size()) continue;
        const SweepRow& next = sr.rows[i + 1];
        if (balanced(next, refine_tol) || gap(r) * gap(next) >= 0.0) continue;
        const RowEvaluator lerp = [&](double a) { return interpolate(r, next, a); };
        add_crossing(found, bisect(r, next, lerp, refine_tol));
    }
    return assemble(sr, std::move(found), std::nullopt);
}

OperatingPoints find_operating_points(const SweepResult& sr, const RowEvaluator& eval, double refine_tol) {
    if (sr.rows.empty()) throw DomainError("find_operating_points: empty sweep");
    const auto& rows = sr.rows;
    const std::size_t n = rows.size();
    std::vector<SweepRow> found;
    for (std::size_t i = 0; i < n; ++i) {
        if (balanced(rows[i], refine_tol)) {
            add_crossing(found, rows[i]);
            continue;
        }
        if (i + 1 < n && !balanced(rows[i + 1], refine_tol) && gap(rows[i]) * gap(rows[i + 1]) < 0.0)
            add_crossing(found, bisect(rows[i], rows[i + 1], eval, refine_tol));

        // Extremum of the gap that the grid shows approaching but not reaching zero.
        const double sign = gap(rows[i]) > 0.0 ? -1.0 : 1.0;
        const bool left_ok = i == 0 || (sign * gap(rows[i - 1]) < 0.0 && sign * gap(rows[i]) >= sign * gap(rows[i - 1]));
        const bool right_ok =
            i + 1 == n || (sign * gap(rows[i + 1]) < 0.0 && sign * gap(rows[i]) >= sign * gap(rows[i + 1]));
        if (n < 2 || !left_ok || !right_ok) continue;
        const double a = rows[i == 0 ? 0 : i - 1].alpha;
        const double b = rows[i + 1 == n ? i : i + 1].alpha;
        const SweepRow peak = push_toward_zero(a, b, sign, eval, 1e-12);
        if (balanced(peak, refine_tol)) {
            add_crossing(found, peak);
        } else if (sign * gap(peak) > 0.0) {
            // Overshoot: one crossing on each side of the peak.
            if (peak.alpha > a) add_crossing(found, bisect(eval(a), peak, eval, refine_tol));
            if (peak.alpha < b) add_crossing(found, bisect(peak, eval(b), eval, refine_tol));
        }
    }
    return assemble(sr, std::move(found), eval);
}

SchemeComparison compare_duplex_schemes(const SweepResult& sr, const OperatingPoints& points) {
    const SweepRow* hd = find_row(sr, 0.0);
    const SweepRow* fd = find_row(sr, 1.0);
    if (!hd || !fd) throw DomainError("compare_duplex_schemes: sweep must contain alpha = 0 and alpha = 1");
    auto pct = [](double v, double ref) { return 100.0 * (v / ref - 1.0); };
    SchemeComparison c;
    c.fd_ul_pct = pct(fd->ul.throughput, hd->ul.throughput);
    c.fd_dl_pct = pct(fd->dl.throughput, hd->dl.throughput);
    c.balanced_ul_pct = pct(points.balanced.ul, hd->ul.throughput);
    c.balanced_dl_pct = pct(points.balanced.dl, hd->dl.throughput);
    c.unbalanced_ul_pct = pct(points.unbalanced.ul, hd->ul.throughput);
    c.unbalanced_dl_pct = pct(points.unbalanced.dl, hd->dl.throughput);
    return c;
}

}  // namespace alphaduplex

#pragma once

// Alpha sweeps over either evaluation path, operating-point search, and
// HD/FD throughput comparisons.

#include <functional>
#include <string_view>
#include <vector>

#include "alphaduplex/analytic.hpp"
#include "alphaduplex/montecarlo.hpp"
#include "alphaduplex/pulse.hpp"

namespace alphaduplex {

enum class Source { Analytic, MonteCarlo };

std::string_view to_string(Source s);

struct SweepRow {
    double alpha = 0.0;
    LinkMetrics ul;
    LinkMetrics dl;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    Source source = Source::Analytic;
};

/// start, start + step, ... up to stop (inclusive within step/1e6).
std::vector<double> make_alpha_grid(double start, double stop, double step);

/// Throws DomainError unless the grid is nonempty, inside [0, 1], and strictly increasing.
void validate_alpha_grid(const std::vector<double>& grid);

/// Analytic rows for every grid point; grid points run concurrently.
SweepResult sweep_alpha(const SystemParams& p, const PulsePair& pulses, const std::vector<double>& grid,
                        Source source = Source::Analytic, const SimConfig& sim = {});

/// Same, with factors supplied per alpha (e.g. held constant for tests).
SweepResult sweep_alpha(const SystemParams& p, const FactorProvider& factors, const std::vector<double>& grid,
                        Source source = Source::Analytic, const SimConfig& sim = {});

/// One analytic row at a single alpha.
SweepRow analytic_row(double alpha, const SystemParams& p, const FactorProvider& factors);

/// Throughput pair at any alpha; lets the search refine between grid points.
using RowEvaluator = std::function<SweepRow(double alpha)>;

RowEvaluator analytic_evaluator(const SystemParams& p, const FactorProvider& factors);

struct ThroughputPair {
    double ul = 0.0;
    double dl = 0.0;
};

struct OperatingPoints {
    double balanced_alpha = 0.0;
    ThroughputPair balanced;
    std::vector<double> crossings;  // every balancing alpha found, increasing
    double unbalanced_alpha = 0.0;
    ThroughputPair unbalanced;
    ThroughputPair hd;  // alpha = 0
    ThroughputPair fd;  // alpha = 1
};

/// Grid-only search: sign changes of T_ul - T_dl are bisected by linear
/// interpolation of the sampled curves.
OperatingPoints find_operating_points(const SweepResult& sr, double refine_tol = 1e-6);

/// Search with re-evaluation between grid points. Grid brackets of
/// T_ul - T_dl are bisected on the evaluator, and grid extrema of the
/// difference that stop short of zero are refined by golden section first so
/// that narrow crossings between grid points are not missed.
/// Several crossings: the one with the largest T_ul + T_dl wins, then the
/// larger alpha. NoCrossingError when no balancing alpha exists.
OperatingPoints find_operating_points(const SweepResult& sr, const RowEvaluator& eval, double refine_tol = 1e-6);

struct SchemeComparison {
    double fd_ul_pct = 0.0;  // 100 (T(1) / T(0) - 1)
    double fd_dl_pct = 0.0;
    double balanced_ul_pct = 0.0;
    double balanced_dl_pct = 0.0;
    double unbalanced_ul_pct = 0.0;
    double unbalanced_dl_pct = 0.0;
};

/// Deltas relative to the HD row; `sr` must contain alpha = 0 and alpha = 1
/// (DomainError otherwise), which also supply the HD and FD throughputs.
SchemeComparison compare_duplex_schemes(const SweepResult& sr, const OperatingPoints& points);

}  // namespace alphaduplex

#pragma once

// System-level simulator: PPP deployments with one active UE per BS under
// truncated channel inversion, per-link SINR at the matched-filter output,
// and spatially averaged conditional BER over a central measurement window.
//
// Randomness is counter-based. BS positions come from 1 km tiles, each with its
// own substream of (seed, realization, tile), so a larger region contains the
// smaller one unchanged. UE placement is keyed by BS, and every channel gain
// by (realization, draw, direction, receiver, transmitter). A realization
// is therefore bit-identical regardless of thread scheduling, and the same
// gains are reused across alpha.

#include <cstdint>
#include <vector>

#include "alphaduplex/model.hpp"
#include "alphaduplex/pulse.hpp"

namespace alphaduplex {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

struct SimConfig {
    int n_realizations = 100;
    std::uint64_t seed = 1;
    double region_side = 20e3;  // m (400 km^2)
    double core_side = 2e3;     // m (4 km^2 measurement window)
    long candidate_cap = 1'000'000;

    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

struct BaseStation {
    Point position;
    std::uint64_t key = 0;  // stable across region sizes
};

struct ActiveUe {
    Point position;
    double tx_power = 0.0;          // rho d^eta
    double serving_distance = 0.0;  // m
};

/// One sampled deployment; ue[i] is the active UE served by bs[i].
struct NetworkRealization {
    std::vector<BaseStation> bs;
    std::vector<ActiveUe> ue;
    double region_side = 0.0;
    double core_side = 0.0;
    std::uint64_t seed = 0;
    std::size_t index = 0;

    bool in_core(Point p) const;
    std::vector<std::size_t> core_base_stations() const;
    /// Indices i whose UE (not BS) lies in the core window.
    std::vector<std::size_t> core_users() const;
};

/// Throws StarvationError when some BS exhausts the candidate cap.
NetworkRealization sample_realization(const SystemParams& p, const SimConfig& cfg, std::size_t realization_index);

/// Interference components at one uplink receiver for one fading draw; the
/// cross factors and beta enter only when forming the SINR.
struct UplinkTerms {
    double h0 = 0.0;
    double bs_sum = 0.0;  // sum_k P_b h_k r_k^-eta over the other BSs
    double ue_sum = 0.0;  // sum_j P_j h_j r_j^-eta over the other active UEs

    double sinr(const InterferenceFactors& f, const SystemParams& p) const;
};

struct DownlinkTerms {
    double h0 = 0.0;
    double serving_distance = 0.0;
    double own_power = 0.0;  // the test UE's own uplink power, drives its SI
    double bs_sum = 0.0;
    double ue_sum = 0.0;

    double sinr(const InterferenceFactors& f, const SystemParams& p) const;
};

UplinkTerms draw_uplink_terms(std::size_t test_bs, const NetworkRealization& net, const SystemParams& p,
                              std::uint64_t draw = 0);
DownlinkTerms draw_downlink_terms(std::size_t test_ue, const NetworkRealization& net, const SystemParams& p,
                                  std::uint64_t draw = 0);

double sinr_uplink(std::size_t test_bs, const NetworkRealization& net, const InterferenceFactors& f,
                   const SystemParams& p, std::uint64_t draw = 0);
double sinr_downlink(std::size_t test_ue, const NetworkRealization& net, const InterferenceFactors& f,
                     const SystemParams& p, std::uint64_t draw = 0);

/// w1 erfc(sqrt(w2 sinr)).
double conditional_ber(double sinr, double omega1, double omega2);

struct EmpiricalMetrics {
    Direction direction = Direction::Uplink;
    double alpha = 0.0;
    double mean_ber = 0.0;
    double std_err = 0.0;
    std::size_t n_links = 0;
    double bandwidth = 0.0;
    double throughput = 0.0;
};

/// Rows ordered by alpha, uplink before downlink. Realizations run on
/// worker_count() threads and are reduced in index order.
std::vector<EmpiricalMetrics> run_campaign(const SystemParams& p, const SimConfig& cfg,
                                           const std::vector<double>& alphas, const FactorProvider& factors);
std::vector<EmpiricalMetrics> run_campaign(const SystemParams& p, const SimConfig& cfg,
                                           const std::vector<double>& alphas, const PulsePair& pulses);

}  // namespace alphaduplex

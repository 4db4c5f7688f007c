#include "alphaduplex/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "alphaduplex/errors.hpp"
#include "alphaduplex/parallel.hpp"
#include "alphaduplex/specfun.hpp"

namespace alphaduplex {

namespace {

constexpr double kTileSide = 1e3;  // m
constexpr double kGridCell = 500.0;

// Stream tags keep the hashed substreams of different purposes disjoint.
enum Tag : std::uint64_t { kTagTile = 1, kTagUe = 2, kTagGain = 3 };
enum Role : std::uint64_t { kRoleBs = 0, kRoleUe = 1 };

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

template <class... Ts>
std::uint64_t hash_words(std::uint64_t h, Ts... words) {
    ((h = splitmix64(h ^ static_cast<std::uint64_t>(words))), ...);
    return h;
}

// Uniform on (0, 1) from the top 53 bits.
double open_unit(std::uint64_t h) { return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53; }

std::uint64_t tile_key(long tx, long ty) {
    const auto ux = static_cast<std::uint64_t>(tx + (1L << 15)) & 0xffffULL;
    const auto uy = static_cast<std::uint64_t>(ty + (1L << 15)) & 0xffffULL;
    return (ux << 16) | uy;
}

// Bucket grid over the region for nearest-BS queries.
class BsGrid {
public:
    BsGrid(const std::vector<BaseStation>& bs, double half_side)
        : bs_(bs), origin_(-half_side), n_(std::max(1L, static_cast<long>(std::ceil(2.0 * half_side / kGridCell)))),
          cells_(static_cast<std::size_t>(n_ * n_)) {
        for (std::size_t i = 0; i < bs.size(); ++i) cells_[cell_index(bs[i].position)].push_back(i);
    }

    /// True when some BS other than `self` is strictly closer to q than d.
    bool closer_exists(Point q, double d, std::size_t self) const {
        const long cx0 = clamp_cell(q.x - d), cx1 = clamp_cell(q.x + d);
        const long cy0 = clamp_cell(q.y - d), cy1 = clamp_cell(q.y + d);
        const double d2 = d * d;
        for (long cx = cx0; cx <= cx1; ++cx)
            for (long cy = cy0; cy <= cy1; ++cy)
                for (std::size_t j : cells_[static_cast<std::size_t>(cx * n_ + cy)]) {
                    if (j == self) continue;
                    const double dx = bs_[j].position.x - q.x, dy = bs_[j].position.y - q.y;
                    if (dx * dx + dy * dy < d2) return true;
                }
        return false;
    }

private:
    long clamp_cell(double v) const {
        return std::clamp(static_cast<long>(std::floor((v - origin_) / kGridCell)), 0L, n_ - 1);
    }
    std::size_t cell_index(Point q) const { return static_cast<std::size_t>(clamp_cell(q.x) * n_ + clamp_cell(q.y)); }

    const std::vector<BaseStation>& bs_;
    double origin_;
    long n_;
    std::vector<std::vector<std::size_t>> cells_;
};

double rayleigh_power(std::uint64_t h) { return -std::log(open_unit(h)); }

struct GainStream {
    std::uint64_t base;

    double operator()(std::uint64_t receiver, std::uint64_t transmitter, Role role) const {
        return rayleigh_power(hash_words(base, receiver, transmitter, static_cast<std::uint64_t>(role)));
    }
};

GainStream gain_stream(const NetworkRealization& net, std::uint64_t draw, Direction d) {
    return {hash_words(net.seed, kTagGain, net.index, draw, static_cast<std::uint64_t>(d))};
}

double path_gain(Point a, Point b, double eta) {
    const double r = distance(a, b);
    return std::pow(r, -eta);
}

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
};

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void SimConfig::validate() const {
    if (n_realizations < 1) throw DomainError("sim: n_realizations must be >= 1");
    if (!(region_side > 0.0) || !std::isfinite(region_side)) throw DomainError("sim: region_side must be > 0");
    if (!(core_side > 0.0)) throw DomainError("sim: core_side must be > 0");
    if (!(core_side < region_side)) throw DomainError("sim: core_side must be < region_side");
    if (candidate_cap < 1) throw DomainError("sim: candidate_cap must be >= 1");
}

bool NetworkRealization::in_core(Point p) const {
    const double h = 0.5 * core_side;
    return std::abs(p.x) <= h && std::abs(p.y) <= h;
}

std::vector<std::size_t> NetworkRealization::core_base_stations() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bs.size(); ++i)
        if (in_core(bs[i].position)) out.push_back(i);
    return out;
}

std::vector<std::size_t> NetworkRealization::core_users() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ue.size(); ++i)
        if (in_core(ue[i].position)) out.push_back(i);
    return out;
}

NetworkRealization sample_realization(const SystemParams& p, const SimConfig& cfg, std::size_t realization_index) {
    p.validate();
    cfg.validate();
    NetworkRealization net;
    net.region_side = cfg.region_side;
    net.core_side = cfg.core_side;
    net.seed = cfg.seed;
    net.index = realization_index;

    // BSs: an independent PPP per 1 km tile, clipped to the region. Tiles are
    // addressed by integer coordinates, so nested regions share their BSs.
    const double half = 0.5 * cfg.region_side;
    const long t_lo = static_cast<long>(std::floor(-half / kTileSide));
    const long t_hi = static_cast<long>(std::ceil(half / kTileSide));
    const double tile_mean = p.lambda_bs * kTileSide * kTileSide;
    for (long tx = t_lo; tx < t_hi; ++tx) {
        for (long ty = t_lo; ty < t_hi; ++ty) {
            const std::uint64_t tk = tile_key(tx, ty);
            std::mt19937_64 rng(hash_words(cfg.seed, kTagTile, realization_index, tk));
            std::poisson_distribution<long> count(tile_mean);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const long n = count(rng);
            for (long k = 0; k < n; ++k) {
                const Point q{(static_cast<double>(tx) + unit(rng)) * kTileSide,
                              (static_cast<double>(ty) + unit(rng)) * kTileSide};
                if (std::abs(q.x) > half || std::abs(q.y) > half) continue;
                net.bs.push_back({q, (tk << 32) | static_cast<std::uint64_t>(k)});
            }
        }
    }

    // One active UE per BS: candidates uniform over the region, kept when
    // their nearest BS is this one and it can invert them. Drawing from the
    // box [bs +- r_max] only skips candidates that would be rejected anyway.
    const double r_max = p.max_serving_distance();
    const BsGrid grid(net.bs, half);
    net.ue.resize(net.bs.size());
    for (std::size_t i = 0; i < net.bs.size(); ++i) {
        const Point c = net.bs[i].position;
        const double x0 = std::max(-half, c.x - r_max), x1 = std::min(half, c.x + r_max);
        const double y0 = std::max(-half, c.y - r_max), y1 = std::min(half, c.y + r_max);
        std::mt19937_64 rng(hash_words(cfg.seed, kTagUe, realization_index, net.bs[i].key));
        std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
        bool served = false;
        for (long attempt = 0; attempt < cfg.candidate_cap; ++attempt) {
            const Point q{ux(rng), uy(rng)};
            const double d = distance(q, c);
            if (d > r_max || grid.closer_exists(q, d, i)) continue;
            net.ue[i] = {q, p.rho * std::pow(d, p.eta), d};
            served = true;
            break;
        }
        if (!served)
            throw StarvationError("no invertible UE for BS " + std::to_string(i) + " within " +
                                  std::to_string(cfg.candidate_cap) + " candidates");
    }
    return net;
}

double UplinkTerms::sinr(const InterferenceFactors& f, const SystemParams& p) const {
    const double denom =
        bs_sum * f.i_du_sq + ue_sum * f.i_uu_sq + p.beta * p.p_b * f.i_su_sq + p.noise_variance();
    return p.rho * h0 / denom;
}

double DownlinkTerms::sinr(const InterferenceFactors& f, const SystemParams& p) const {
    const double denom =
        bs_sum * f.i_dd_sq + ue_sum * f.i_ud_sq + p.beta * own_power * f.i_sd_sq + p.noise_variance();
    return p.p_b * std::pow(serving_distance, -p.eta) * h0 / denom;
}

UplinkTerms draw_uplink_terms(std::size_t test_bs, const NetworkRealization& net, const SystemParams& p,
                              std::uint64_t draw) {
    const GainStream gain = gain_stream(net, draw, Direction::Uplink);
    const BaseStation& rx = net.bs.at(test_bs);
    UplinkTerms t;
    t.h0 = gain(rx.key, rx.key, kRoleUe);
    for (std::size_t k = 0; k < net.bs.size(); ++k) {
        if (k == test_bs) continue;
        t.bs_sum += p.p_b * gain(rx.key, net.bs[k].key, kRoleBs) * path_gain(net.bs[k].position, rx.position, p.eta);
        t.ue_sum += net.ue[k].tx_power * gain(rx.key, net.bs[k].key, kRoleUe) *
                    path_gain(net.ue[k].position, rx.position, p.eta);
    }
    return t;
}

DownlinkTerms draw_downlink_terms(std::size_t test_ue, const NetworkRealization& net, const SystemParams& p,
                                  std::uint64_t draw) {
    const GainStream gain = gain_stream(net, draw, Direction::Downlink);
    const ActiveUe& rx = net.ue.at(test_ue);
    const std::uint64_t rx_key = net.bs[test_ue].key;
    DownlinkTerms t;
    t.h0 = gain(rx_key, rx_key, kRoleBs);
    t.serving_distance = rx.serving_distance;
    t.own_power = rx.tx_power;
    for (std::size_t k = 0; k < net.bs.size(); ++k) {
        if (k == test_ue) continue;
        t.bs_sum += p.p_b * gain(rx_key, net.bs[k].key, kRoleBs) * path_gain(net.bs[k].position, rx.position, p.eta);
        t.ue_sum += net.ue[k].tx_power * gain(rx_key, net.bs[k].key, kRoleUe) *
                    path_gain(net.ue[k].position, rx.position, p.eta);
    }
    return t;
}

double sinr_uplink(std::size_t test_bs, const NetworkRealization& net, const InterferenceFactors& f,
                   const SystemParams& p, std::uint64_t draw) {
    return draw_uplink_terms(test_bs, net, p, draw).sinr(f, p);
}

double sinr_downlink(std::size_t test_ue, const NetworkRealization& net, const InterferenceFactors& f,
                     const SystemParams& p, std::uint64_t draw) {
    return draw_downlink_terms(test_ue, net, p, draw).sinr(f, p);
}

double conditional_ber(double sinr, double omega1, double omega2) {
    return omega1 * specfun::erfc(std::sqrt(omega2 * sinr));
}

std::vector<EmpiricalMetrics> run_campaign(const SystemParams& p, const SimConfig& cfg,
                                           const std::vector<double>& alphas, const FactorProvider& factors) {
    p.validate();
    cfg.validate();
    if (alphas.empty()) throw DomainError("run_campaign: alpha list is empty");
    std::vector<InterferenceFactors> f;
    f.reserve(alphas.size());
    for (double a : alphas) f.push_back(factors(a));

    // acc[r][2 a + d]: per-realization partial sums, reduced in index order.
    const std::size_t n_real = static_cast<std::size_t>(cfg.n_realizations);
    std::vector<std::vector<Accumulator>> acc(n_real, std::vector<Accumulator>(2 * alphas.size()));
    parallel_for(n_real, [&](std::size_t r) {
        const NetworkRealization net = sample_realization(p, cfg, r);
        auto& slot = acc[r];
        for (std::size_t i : net.core_base_stations()) {
            const UplinkTerms t = draw_uplink_terms(i, net, p);
            for (std::size_t a = 0; a < alphas.size(); ++a)
                slot[2 * a].add(conditional_ber(t.sinr(f[a], p), p.omega1_u, p.omega2_u));
        }
        for (std::size_t i : net.core_users()) {
            const DownlinkTerms t = draw_downlink_terms(i, net, p);
            for (std::size_t a = 0; a < alphas.size(); ++a)
                slot[2 * a + 1].add(conditional_ber(t.sinr(f[a], p), p.omega1_d, p.omega2_d));
        }
    });

    std::vector<EmpiricalMetrics> out;
    out.reserve(2 * alphas.size());
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        for (Direction d : {Direction::Uplink, Direction::Downlink}) {
            Accumulator total;
            const std::size_t col = 2 * a + (d == Direction::Downlink ? 1 : 0);
            for (const auto& slot : acc) {
                total.sum += slot[col].sum;
                total.sum_sq += slot[col].sum_sq;
                total.n += slot[col].n;
            }
            EmpiricalMetrics m;
            m.direction = d;
            m.alpha = alphas[a];
            m.n_links = total.n;
            m.bandwidth = BandPlan(p, alphas[a]).accessible_bandwidth(d);
            if (total.n == 0) {
                m.mean_ber = m.std_err = m.throughput = std::numeric_limits<double>::quiet_NaN();
            } else {
                const double n = static_cast<double>(total.n);
                m.mean_ber = total.sum / n;
                const double var = total.n > 1 ? std::max(0.0, (total.sum_sq - n * m.mean_ber * m.mean_ber) / (n - 1.0)) : 0.0;
                m.std_err = std::sqrt(var / n);
                m.throughput = p.bits_per_symbol() * m.bandwidth * (1.0 - m.mean_ber);
            }
            out.push_back(m);
        }
    }
    return out;
}

std::vector<EmpiricalMetrics> run_campaign(const SystemParams& p, const SimConfig& cfg,
                                           const std::vector<double>& alphas, const PulsePair& pulses) {
    return run_campaign(p, cfg, alphas, pulse_factor_provider(p, pulses));
}

}  // namespace alphaduplex

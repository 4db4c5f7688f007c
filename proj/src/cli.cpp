#include "alphaduplex/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "alphaduplex/analytic.hpp"
#include "alphaduplex/errors.hpp"
#include "alphaduplex/parallel.hpp"

namespace alphaduplex::cli {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ConfigError("out_dir", "cannot write '" + path.string() + "'");
    return out;
}

void write_sweep_csv(const SweepResult& sr, std::ostream& out) {
    out << "alpha,t_ul,t_dl,ber_ul,ber_dl\n";
    for (const auto& r : sr.rows)
        out << num(r.alpha) << ',' << num(r.ul.throughput) << ',' << num(r.dl.throughput) << ',' << num(r.ul.ber)
            << ',' << num(r.dl.ber) << '\n';
}

void write_points(const OperatingPoints& op, const SchemeComparison* cmp, Source source, std::ostream& out) {
    out << "source=" << to_string(source) << '\n';
    out << "balanced_alpha=" << num(op.balanced_alpha) << '\n';
    out << "balanced_t_ul=" << num(op.balanced.ul) << '\n';
    out << "balanced_t_dl=" << num(op.balanced.dl) << '\n';
    out << "crossings=";
    for (std::size_t i = 0; i < op.crossings.size(); ++i) out << (i ? ";" : "") << num(op.crossings[i]);
    out << '\n';
    out << "unbalanced_alpha=" << num(op.unbalanced_alpha) << '\n';
    out << "unbalanced_t_ul=" << num(op.unbalanced.ul) << '\n';
    out << "unbalanced_t_dl=" << num(op.unbalanced.dl) << '\n';
    out << "hd_t_ul=" << num(op.hd.ul) << '\n';
    out << "hd_t_dl=" << num(op.hd.dl) << '\n';
    out << "fd_t_ul=" << num(op.fd.ul) << '\n';
    out << "fd_t_dl=" << num(op.fd.dl) << '\n';
    if (cmp) {
        out << "fd_ul_delta_pct=" << num(cmp->fd_ul_pct) << '\n';
        out << "fd_dl_delta_pct=" << num(cmp->fd_dl_pct) << '\n';
        out << "balanced_ul_delta_pct=" << num(cmp->balanced_ul_pct) << '\n';
        out << "balanced_dl_delta_pct=" << num(cmp->balanced_dl_pct) << '\n';
        out << "unbalanced_ul_delta_pct=" << num(cmp->unbalanced_ul_pct) << '\n';
        out << "unbalanced_dl_delta_pct=" << num(cmp->unbalanced_dl_pct) << '\n';
    }
}

std::vector<double> with_endpoints(std::vector<double> grid) {
    if (grid.front() != 0.0) grid.insert(grid.begin(), 0.0);
    if (grid.back() != 1.0) grid.push_back(1.0);
    return grid;
}

}  // namespace

std::vector<double> curve_grid(const RunConfig& cfg) {
    return cfg.alpha_grid ? *cfg.alpha_grid : make_alpha_grid(0.0, 1.0, 0.01);
}

std::vector<double> validation_grid(const RunConfig& cfg) {
    return cfg.alpha_grid ? *cfg.alpha_grid : make_alpha_grid(0.0, 1.0, 0.2);
}

std::string error_line(std::string_view kind, std::string_view message) {
    std::string escaped;
    for (char c : message) {
        if (c == '"' || c == '\\') escaped.push_back('\\');
        escaped.push_back(c == '\n' ? ' ' : c);
    }
    return "error: kind=" + std::string(kind) + " message=\"" + escaped + "\"";
}

int cmd_factors(const RunConfig& cfg, std::ostream& log) {
    const auto grid = curve_grid(cfg);
    std::vector<InterferenceFactors> rows(grid.size());
    const FactorProvider factors = pulse_factor_provider(cfg.params, cfg.pulses);
    parallel_for(grid.size(), [&](std::size_t i) { rows[i] = factors(grid[i]); });
    auto out = open_output(cfg, "factors.csv");
    out << "alpha,i_du_sq,i_ud_sq\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << num(grid[i]) << ',' << num(rows[i].i_du_sq) << ',' << num(rows[i].i_ud_sq) << '\n';
    log << "wrote factors.csv rows=" << grid.size() << '\n';
    return kOk;
}

int cmd_analytic(const RunConfig& cfg, std::ostream& log) {
    const SweepResult sr = sweep_alpha(cfg.params, cfg.pulses, curve_grid(cfg), Source::Analytic);
    auto out = open_output(cfg, "analytic.csv");
    out << "direction,alpha,ber,bandwidth_hz,throughput_bps\n";
    for (const auto& r : sr.rows)
        for (const LinkMetrics* m : {&r.ul, &r.dl})
            out << to_string(m->direction) << ',' << num(m->alpha) << ',' << num(m->ber) << ','
                << num(m->bandwidth) << ',' << num(m->throughput) << '\n';
    log << "wrote analytic.csv rows=" << 2 * sr.rows.size() << '\n';
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    const auto rows = run_campaign(cfg.params, cfg.sim, validation_grid(cfg), cfg.pulses);
    auto out = open_output(cfg, "simulate.csv");
    out << "direction,alpha,mean_ber,std_err,n_links,bandwidth_hz,throughput_bps\n";
    for (const auto& m : rows)
        out << to_string(m.direction) << ',' << num(m.alpha) << ',' << num(m.mean_ber) << ',' << num(m.std_err) << ','
            << m.n_links << ',' << num(m.bandwidth) << ',' << num(m.throughput) << '\n';
    log << "wrote simulate.csv rows=" << rows.size() << " realizations=" << cfg.sim.n_realizations << '\n';
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
    const auto grid = with_endpoints(curve_grid(cfg));
    const FactorProvider factors = pulse_factor_provider(cfg.params, cfg.pulses);
    const SweepResult sr = sweep_alpha(cfg.params, factors, grid, cfg.sweep_source, cfg.sim);
    {
        auto out = open_output(cfg, "sweep.csv");
        write_sweep_csv(sr, out);
    }
    const OperatingPoints op = cfg.sweep_source == Source::Analytic
                                   ? find_operating_points(sr, analytic_evaluator(cfg.params, factors), cfg.refine_tol)
                                   : find_operating_points(sr, cfg.refine_tol);
    const SchemeComparison cmp = compare_duplex_schemes(sr, op);
    auto out = open_output(cfg, "operating_points.txt");
    write_points(op, &cmp, sr.source, out);
    log << "wrote sweep.csv rows=" << sr.rows.size() << " balanced_alpha=" << num(op.balanced_alpha)
        << " unbalanced_alpha=" << num(op.unbalanced_alpha) << '\n';
    return kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
    const auto grid = validation_grid(cfg);
    const FactorProvider factors = pulse_factor_provider(cfg.params, cfg.pulses);
    const SweepResult analytic = sweep_alpha(cfg.params, factors, grid, Source::Analytic);
    const auto empirical = run_campaign(cfg.params, cfg.sim, grid, factors);

    double max_diff[2] = {0.0, 0.0};
    bool pass = true;
    auto out = open_output(cfg, "validate.csv");
    out << "direction,alpha,analytic_ber,empirical_ber,std_err,n_links,abs_diff,tolerance,pass\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int d = 0; d < 2; ++d) {
            const LinkMetrics& a = d == 0 ? analytic.rows[i].ul : analytic.rows[i].dl;
            const EmpiricalMetrics& e = empirical[2 * i + static_cast<std::size_t>(d)];
            const double diff = std::abs(a.ber - e.mean_ber);
            const double tol = std::max(cfg.validate_tol, 4.0 * e.std_err);
            const bool ok = e.n_links > 0 && diff <= tol;
            pass = pass && ok;
            max_diff[d] = std::max(max_diff[d], std::isnan(diff) ? INFINITY : diff);
            out << to_string(a.direction) << ',' << num(grid[i]) << ',' << num(a.ber) << ',' << num(e.mean_ber) << ','
                << num(e.std_err) << ',' << e.n_links << ',' << num(diff) << ',' << num(tol) << ','
                << (ok ? "true" : "false") << '\n';
        }
    }
    auto summary = open_output(cfg, "validate.txt");
    for (std::ostream* s : {static_cast<std::ostream*>(&summary), &log}) {
        *s << "max_abs_diff_uplink=" << num(max_diff[0]) << '\n';
        *s << "max_abs_diff_downlink=" << num(max_diff[1]) << '\n';
        *s << "tolerance=" << num(cfg.validate_tol) << '\n';
        *s << "pass=" << (pass ? "true" : "false") << '\n';
    }
    return pass ? kOk : kValidationFailed;
}

int run_command(std::string_view command, const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        if (command == "factors") return cmd_factors(cfg, log);
        if (command == "analytic") return cmd_analytic(cfg, log);
        if (command == "simulate") return cmd_simulate(cfg, log);
        if (command == "sweep") return cmd_sweep(cfg, log);
        if (command == "validate") {
            const int status = cmd_validate(cfg, log);
            if (status == kValidationFailed)
                err << error_line("validation", "analytic and empirical BER differ beyond tolerance") << '\n';
            return status;
        }
        err << error_line("config", "unknown command '" + std::string(command) + "'") << '\n';
        return kConfig;
    } catch (const ConfigError& e) {
        err << error_line("config", e.what()) << '\n';
        return kConfig;
    } catch (const ConvergenceError& e) {
        err << error_line("quadrature", e.what()) << '\n';
        return kQuadrature;
    } catch (const StarvationError& e) {
        err << error_line("starvation", e.what()) << '\n';
        return kStarvation;
    } catch (const NoCrossingError& e) {
        err << error_line("no_crossing", e.what()) << '\n';
        return kNoCrossing;
    } catch (const DomainError& e) {
        err << error_line("domain", e.what()) << '\n';
        return kDomain;
    } catch (const std::exception& e) {
        err << error_line("internal", e.what()) << '\n';
        return kInternal;
    }
}

}  // namespace alphaduplex::cli

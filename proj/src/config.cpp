#include "alphaduplex/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "alphaduplex/errors.hpp"

namespace alphaduplex {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// A value split into its leading number and a (possibly empty) unit suffix.
struct Quantity {
    double value;
    std::string unit;  // lower-case, spaces removed
};

Quantity parse_quantity(const std::string& key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v)) throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
    std::string unit;
    for (const char* c = ptr; c != last; ++c)
        if (!std::isspace(static_cast<unsigned char>(*c))) unit.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(*c))));
    return {v, unit};
}

double require_plain(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (!q.unit.empty()) throw ConfigError(key, "unexpected unit '" + q.unit + "'");
    return q.value;
}

[[noreturn]] void bad_unit(const std::string& key, const Quantity& q, const char* accepted) {
    throw ConfigError(key, (q.unit.empty() ? std::string("missing unit") : "unknown unit '" + q.unit + "'") +
                               " (accepted: " + accepted + ")");
}

double parse_power(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (q.unit == "dbm") return units::dbm_to_watts(q.value);
    if (q.unit == "w") return q.value;
    if (q.unit == "mw") return 1e-3 * q.value;
    bad_unit(key, q, "dBm, W, mW");
}

double parse_density(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (q.unit == "dbm" || q.unit == "dbm/hz") return units::dbm_to_watts(q.value);
    if (q.unit == "w/hz") return q.value;
    bad_unit(key, q, "dBm, dBm/Hz, W/Hz");
}

double parse_intensity(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (q.unit == "/km2" || q.unit == "/km^2") return units::per_km2_to_per_m2(q.value);
    if (q.unit == "/m2" || q.unit == "/m^2") return q.value;
    bad_unit(key, q, "/km2, /m2");
}

double parse_bandwidth(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (q.unit == "mhz") return units::mhz_to_hz(q.value);
    if (q.unit == "khz") return 1e3 * q.value;
    if (q.unit == "hz") return q.value;
    bad_unit(key, q, "MHz, kHz, Hz");
}

double parse_length(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (q.unit == "km") return units::km_to_m(q.value);
    if (q.unit == "m") return q.value;
    bad_unit(key, q, "km, m");
}

double parse_ratio(const std::string& key, std::string_view text) {
    const Quantity q = parse_quantity(key, text);
    if (q.unit == "db") return units::db_to_linear(q.value);
    if (q.unit.empty()) return q.value;
    bad_unit(key, q, "dB or a bare linear value");
}

long parse_integer(const std::string& key, std::string_view text) {
    text = trim(text);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_seed(const std::string& key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + std::string(text) + "'");
    return v;
}

struct KeySpec {
    std::string section;
    std::function<void(RunConfig&, const std::string&, std::string_view)> apply;
};

const std::map<std::string, KeySpec>& key_table() {
    static const std::map<std::string, KeySpec> table = [] {
        std::map<std::string, KeySpec> t;
        auto param = [&t](const char* key, double (*parse)(const std::string&, std::string_view),
                          double SystemParams::*field) {
            t[key] = {"params", [parse, field](RunConfig& c, const std::string& k, std::string_view v) {
                          c.params.*field = parse(k, v);
                      }};
        };
        param("lambda", parse_intensity, &SystemParams::lambda_bs);
        param("eta", require_plain, &SystemParams::eta);
        param("rho", parse_power, &SystemParams::rho);
        param("p_b", parse_power, &SystemParams::p_b);
        param("p_u_max", parse_power, &SystemParams::p_u_max);
        param("beta", parse_ratio, &SystemParams::beta);
        param("n0", parse_density, &SystemParams::n0);
        param("b_u", parse_bandwidth, &SystemParams::b_u);
        param("b_d", parse_bandwidth, &SystemParams::b_d);
        param("omega1_u", require_plain, &SystemParams::omega1_u);
        param("omega2_u", require_plain, &SystemParams::omega2_u);
        param("omega1_d", require_plain, &SystemParams::omega1_d);
        param("omega2_d", require_plain, &SystemParams::omega2_d);
        t["modulation_order"] = {"params", [](RunConfig& c, const std::string& k, std::string_view v) {
                                     c.params.m_symbols = static_cast<int>(parse_integer(k, v));
                                 }};

        t["realizations"] = {"sim", [](RunConfig& c, const std::string& k, std::string_view v) {
                                 c.sim.n_realizations = static_cast<int>(parse_integer(k, v));
                             }};
        t["seed"] = {"sim", [](RunConfig& c, const std::string& k, std::string_view v) { c.sim.seed = parse_seed(k, v); }};
        t["region_side"] = {"sim", [](RunConfig& c, const std::string& k, std::string_view v) {
                                c.sim.region_side = parse_length(k, v);
                            }};
        t["core_side"] = {"sim", [](RunConfig& c, const std::string& k, std::string_view v) {
                              c.sim.core_side = parse_length(k, v);
                          }};
        t["candidate_cap"] = {"sim", [](RunConfig& c, const std::string& k, std::string_view v) {
                                  c.sim.candidate_cap = parse_integer(k, v);
                              }};

        auto pulse = [](PulseKind PulsePair::*field) {
            return [field](RunConfig& c, const std::string& k, std::string_view v) {
                try {
                    c.pulses.*field = parse_pulse_kind(trim(v));
                } catch (const DomainError& e) {
                    throw ConfigError(k, e.what());
                }
            };
        };
        t["downlink"] = {"pulses", pulse(&PulsePair::downlink)};
        t["uplink"] = {"pulses", pulse(&PulsePair::uplink)};

        t["alpha_grid"] = {"sweep", [](RunConfig& c, const std::string&, std::string_view v) {
                               c.alpha_grid = parse_alpha_grid(v);
                           }};
        t["refine_tol"] = {"sweep", [](RunConfig& c, const std::string& k, std::string_view v) {
                               c.refine_tol = require_plain(k, v);
                               if (!(c.refine_tol > 0.0)) throw ConfigError(k, "must be > 0");
                           }};
        t["source"] = {"sweep", [](RunConfig& c, const std::string& k, std::string_view v) {
                           const std::string s = lower(trim(v));
                           if (s == "analytic")
                               c.sweep_source = Source::Analytic;
                           else if (s == "montecarlo" || s == "mc")
                               c.sweep_source = Source::MonteCarlo;
                           else
                               throw ConfigError(k, "expected analytic or montecarlo");
                       }};
        t["out_dir"] = {"sweep", [](RunConfig& c, const std::string&, std::string_view v) {
                            c.out_dir = std::string(trim(v));
                        }};
        t["tolerance"] = {"validate", [](RunConfig& c, const std::string& k, std::string_view v) {
                              c.validate_tol = require_plain(k, v);
                              if (!(c.validate_tol > 0.0)) throw ConfigError(k, "must be > 0");
                          }};
        return t;
    }();
    return table;
}

const std::set<std::string> kSections{"params", "sim", "pulses", "sweep", "validate"};

}  // namespace

std::vector<double> parse_alpha_grid(std::string_view text) {
    const std::string key = "alpha_grid";
    std::vector<double> parts;
    std::string_view rest = trim(text);
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(require_plain(key, rest.substr(0, colon)));
        if (colon == std::string_view::npos) break;
        rest = rest.substr(colon + 1);
    }
    if (parts.size() != 3 && parts.size() != 1) throw ConfigError(key, "expected start:stop:step or a single alpha");
    try {
        if (parts.size() == 1) {
            validate_alpha_grid(parts);
            return parts;
        }
        return make_alpha_grid(parts[0], parts[1], parts[2]);
    } catch (const DomainError& e) {
        throw ConfigError(key, e.what());
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where, "unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!kSections.count(section)) throw ConfigError(where, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where, "expected key = value");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto& table = key_table();
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError(key, "unknown key");
        if (!section.empty() && section != it->second.section)
            throw ConfigError(key, "belongs in [" + it->second.section + "], found in [" + section + "]");
        if (!seen.insert(key).second) throw ConfigError(key, "given twice");
        if (value.empty()) throw ConfigError(key, "empty value");
        it->second.apply(cfg, key, value);
    }
    try {
        cfg.params.validate();
    } catch (const DomainError& e) {
        throw ConfigError("params", e.what());
    }
    try {
        cfg.sim.validate();
    } catch (const DomainError& e) {
        throw ConfigError("sim", e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace alphaduplex

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kdq/csv.hpp"
#include "kdq/nonmarkov.hpp"
#include "kdq/suites.hpp"
#include "kdq/svg.hpp"

namespace kdq {

// Everything a run needs, assembled from an optional config file overridden by
// command-line flags.
struct RunConfig {
    std::string command;  // traj | sweep | check
    std::string channel;
    std::map<std::string, double> params;  // keyed by flag name: s, omega-c, gamma0, ...
    double tMax = 30.0;
    std::size_t n = 4096;
    std::string basis = "fixed";
    std::string param;  // sweep target
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 0;
    std::string out;
    std::string svg;
    std::string suite;  // check target
};

// Flat `key = value` file, '#' starts a comment, keys are flag names with
// '-' replaced by '_'.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParamError("config line " + std::to_string(lineNo) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        for (auto& c : key)
            if (c == '_') c = '-';
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

namespace detail {

inline double require_param(const RunConfig& cfg, const std::string& name) {
    const auto it = cfg.params.find(name);
    if (it == cfg.params.end())
        throw ParamError("missing required parameter --" + name + " for channel " + cfg.channel);
    return it->second;
}

inline double param_or(const RunConfig& cfg, const std::string& name, double fallback) {
    const auto it = cfg.params.find(name);
    return it == cfg.params.end() ? fallback : it->second;
}

}  // namespace detail

inline ChannelKind channel_kind(const std::string& name) {
    if (name == "dephase1q") return ChannelKind::Dephase1Q;
    if (name == "damp1q") return ChannelKind::Damp1Q;
    if (name == "dephase2q") return ChannelKind::Dephase2Q;
    if (name == "damp2q") return ChannelKind::Damp2Q;
    throw ParamError("unknown channel '" + name + "' (expected dephase1q, damp1q, dephase2q, damp2q)");
}

inline ChannelModel build_channel(const RunConfig& cfg) {
    const ChannelKind kind = channel_kind(cfg.channel);
    switch (kind) {
        case ChannelKind::Dephase1Q:
            return {kind, OhmicParams{detail::require_param(cfg, "s"),
                                      detail::param_or(cfg, "omega-c", 1.0)}};
        case ChannelKind::Damp1Q:
        case ChannelKind::Damp2Q:
            return {kind, LorentzParams{detail::require_param(cfg, "gamma0"),
                                        detail::require_param(cfg, "kappa"),
                                        detail::param_or(cfg, "varpi", 0.0)}};
        case ChannelKind::Dephase2Q:
            return {kind, TwoQubitDephasingParams{detail::require_param(cfg, "h1"),
                                                  detail::require_param(cfg, "h2"),
                                                  detail::param_or(cfg, "lambda", 0.0),
                                                  {detail::require_param(cfg, "s"),
                                                   detail::param_or(cfg, "omega-c", 1.0)}}};
    }
    throw ParamError("unknown channel kind");
}

inline BasisMode basis_mode(const RunConfig& cfg, ChannelKind kind) {
    if (cfg.basis == "fixed") return BasisMode::fixed(default_fixed_angles(kind));
    if (cfg.basis == "optimized") return BasisMode::optimize();
    throw ParamError("--basis must be 'fixed' or 'optimized', got '" + cfg.basis + "'");
}

// Per-sample optimization over a four-angle product-basis grid is expensive;
// two-qubit optimized runs get a coarser starting grid, refinement recovers
// the accuracy.
inline OptimizerConfig optimizer_for(const RunConfig& cfg, const ChannelModel& model) {
    OptimizerConfig opt;
    if (cfg.basis == "optimized" && model.dim() == 4) opt.gridPoints = 8;
    return opt;
}

inline int run_traj(const RunConfig& cfg) {
    const ChannelModel model = build_channel(cfg);
    if (cfg.out.empty()) throw ParamError("missing --out path for traj");
    const TimeGrid grid{cfg.tMax, cfg.n};
    grid.validate();
    const auto traj = trajectory(model, fiducial_state(model.kind), grid,
                                 basis_mode(cfg, model.kind), optimizer_for(cfg, model));

    const bool damp = model.kind == ChannelKind::Damp1Q || model.kind == ChannelKind::Damp2Q;
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double t = grid.time(i);
        const double diag =
            damp ? std::abs(b_analytic(t, std::get<LorentzParams>(model.params)))
                 : dephase_factor(t, model.kind == ChannelKind::Dephase1Q
                                         ? std::get<OhmicParams>(model.params)
                                         : std::get<TwoQubitDephasingParams>(model.params).ohmic);
        rows.push_back({t, traj.ckd[i], traj.l1[i], traj.nc[i], diag});
    }
    const std::vector<std::string> header = {"t", "ckd", "l1", "nc", damp ? "absB" : "R"};
    write_csv(cfg.out, header, rows);
    validate_csv(cfg.out, header.size());

    if (!cfg.svg.empty()) {
        std::vector<PlotSeries> series(3);
        series[0].label = "C_KD";
        series[1].label = "l1";
        series[2].label = "N_c";
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double t = grid.time(i);
            series[0].x.push_back(t);
            series[0].y.push_back(traj.ckd[i]);
            series[1].x.push_back(t);
            series[1].y.push_back(traj.l1[i]);
            series[2].x.push_back(t);
            series[2].y.push_back(traj.nc[i]);
        }
        write_svg(cfg.svg, "coherence trajectory: " + cfg.channel, series);
    }
    return 0;
}

inline int run_sweep(const RunConfig& cfgIn) {
    RunConfig cfg = cfgIn;
    if (cfg.param.empty()) throw ParamError("missing --param name for sweep");
    // the swept parameter is overwritten per row, so its flag may be omitted
    const std::string target = cfg.param == "kappa-over-gamma0" ? "kappa" : cfg.param;
    if (cfg.params.find(target) == cfg.params.end()) cfg.params[target] = 1.0;

    const ChannelModel proto = build_channel(cfg);
    if (cfg.out.empty()) throw ParamError("missing --out path for sweep");
    if (cfg.steps == 0) throw ParamError("missing --steps for sweep");
    const TimeGrid grid{cfg.tMax, cfg.n};
    grid.validate();

    const auto rowsIn = sweep(proto, cfg.param, cfg.from, cfg.to, cfg.steps, grid,
                              basis_mode(cfg, proto.kind), optimizer_for(cfg, proto));
    std::vector<std::vector<double>> rows;
    for (const auto& r : rowsIn) {
        if (!r.ok) {
            std::fprintf(stderr, "sweep row %s = %s failed: %s\n", cfg.param.c_str(),
                         format_number(r.paramValue).c_str(), r.error.c_str());
            continue;
        }
        rows.push_back({r.paramValue, r.nCkd, r.nCl1});
    }
    if (rows.empty()) throw Error("sweep produced no valid rows");
    const std::vector<std::string> header = {"paramValue", "nCkd", "nCl1"};
    write_csv(cfg.out, header, rows);
    validate_csv(cfg.out, header.size());

    if (!cfg.svg.empty()) {
        std::vector<PlotSeries> series(2);
        series[0].label = "N_CKD";
        series[1].label = "N_Cl1";
        for (const auto& r : rows) {
            series[0].x.push_back(r[0]);
            series[0].y.push_back(r[1]);
            series[1].x.push_back(r[0]);
            series[1].y.push_back(r[2]);
        }
        write_svg(cfg.svg, "non-Markovianity sweep: " + cfg.channel + " over " + cfg.param,
                  series);
    }
    return 0;
}

inline int run_check(const RunConfig& cfg) {
    SuiteReport rep;
    if (cfg.suite == "a1")
        rep = suite_a1();
    else if (cfg.suite == "a2")
        rep = suite_a2();
    else if (cfg.suite == "a3")
        rep = suite_a3();
    else if (cfg.suite == "a4")
        rep = suite_a4();
    else if (cfg.suite == "a5")
        rep = suite_a5();
    else if (cfg.suite == "kd-invariants")
        rep = suite_kd_invariants();
    else if (cfg.suite == "oracle-volterra")
        rep = suite_volterra();
    else
        throw ParamError("unknown check suite '" + cfg.suite +
                         "' (expected a1..a5, kd-invariants, oracle-volterra)");
    print_suite(rep);
    return rep.all_pass() ? 0 : 1;
}

// Exit-code policy: 0 ok, 2 usage/parameter, 3 io, 4 numerical.
inline int run_command(const RunConfig& cfg) {
    try {
        if (cfg.command == "traj") return run_traj(cfg);
        if (cfg.command == "sweep") return run_sweep(cfg);
        if (cfg.command == "check") return run_check(cfg);
        throw ParamError("unknown command '" + cfg.command + "'");
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const IntegrationError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    } catch (const StepSizeError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    } catch (const ParamError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const NormalizationError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    }
}

}  // namespace kdq

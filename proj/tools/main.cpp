#include <CLI11.hpp>

#include <clocale>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include "kdq/cli.hpp"

namespace {

// Shared numeric flags; each subcommand wires the ones it understands.
struct FlagBag {
    std::map<std::string, std::optional<double>> numeric;
    std::optional<double> tMax;
    std::optional<long long> n;
    std::optional<std::string> basis;
    std::optional<std::string> param;
    std::optional<double> from, to;
    std::optional<long long> steps;
    std::optional<std::string> out, svg, configPath;
    std::optional<std::string> channel;
};

void add_common_flags(CLI::App* cmd, FlagBag& bag) {
    cmd->add_option("--channel", bag.channel, "channel kind: dephase1q damp1q dephase2q damp2q");
    for (const char* name : {"s", "omega-c", "gamma0", "kappa", "varpi", "h1", "h2", "lambda"})
        cmd->add_option(std::string("--") + name, bag.numeric[name]);
    cmd->add_option("--t-max", bag.tMax, "trajectory end time");
    cmd->add_option("--n", bag.n, "number of grid samples");
    cmd->add_option("--basis", bag.basis, "second-basis mode: fixed or optimized");
    cmd->add_option("--out", bag.out, "output CSV path");
    cmd->add_option("--svg", bag.svg, "optional SVG plot path");
    cmd->add_option("--config", bag.configPath, "flat key = value config file");
}

// Config-file values fill whatever the command line left unset.
void merge_config(const std::string& path, kdq::RunConfig& cfg, const FlagBag& bag) {
    const auto kv = kdq::parse_config_file(path);
    auto has = [&kv](const std::string& k) { return kv.find(k) != kv.end(); };
    auto num = [&kv](const std::string& k) { return std::strtod(kv.at(k).c_str(), nullptr); };

    if (!bag.channel && has("channel")) cfg.channel = kv.at("channel");
    for (const char* name : {"s", "omega-c", "gamma0", "kappa", "varpi", "h1", "h2", "lambda"})
        if (!bag.numeric.at(name).has_value() && has(name)) cfg.params[name] = num(name);
    if (!bag.tMax && has("t-max")) cfg.tMax = num("t-max");
    if (!bag.n && has("n")) cfg.n = static_cast<std::size_t>(num("n"));
    if (!bag.basis && has("basis")) cfg.basis = kv.at("basis");
    if (!bag.param && has("param")) cfg.param = kv.at("param");
    if (!bag.from && has("from")) cfg.from = num("from");
    if (!bag.to && has("to")) cfg.to = num("to");
    if (!bag.steps && has("steps")) cfg.steps = static_cast<std::size_t>(num("steps"));
    if (!bag.out && has("out")) cfg.out = kv.at("out");
    if (!bag.svg && has("svg")) cfg.svg = kv.at("svg");
}

void apply_flags(kdq::RunConfig& cfg, const FlagBag& bag) {
    if (bag.channel) cfg.channel = *bag.channel;
    for (const auto& [name, value] : bag.numeric)
        if (value) cfg.params[name] = *value;
    if (bag.tMax) cfg.tMax = *bag.tMax;
    if (bag.n) cfg.n = static_cast<std::size_t>(*bag.n);
    if (bag.basis) cfg.basis = *bag.basis;
    if (bag.param) cfg.param = *bag.param;
    if (bag.from) cfg.from = *bag.from;
    if (bag.to) cfg.to = *bag.to;
    if (bag.steps) cfg.steps = static_cast<std::size_t>(*bag.steps);
    if (bag.out) cfg.out = *bag.out;
    if (bag.svg) cfg.svg = *bag.svg;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"Kirkwood-Dirac coherence and non-Markovianity toolkit"};
    app.require_subcommand(1);

    FlagBag trajBag, sweepBag;
    auto* traj = app.add_subcommand("traj", "emit a coherence trajectory CSV");
    add_common_flags(traj, trajBag);

    auto* sw = app.add_subcommand("sweep", "emit a non-Markovianity parameter sweep CSV");
    add_common_flags(sw, sweepBag);
    sw->add_option("--param", sweepBag.param, "parameter to vary");
    sw->add_option("--from", sweepBag.from, "range start");
    sw->add_option("--to", sweepBag.to, "range end");
    sw->add_option("--steps", sweepBag.steps, "number of sweep points");

    std::string suiteName;
    auto* check = app.add_subcommand("check", "run a property suite");
    check->add_option("suite", suiteName,
                      "one of a1 a2 a3 a4 a5 kd-invariants oracle-volterra")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    kdq::RunConfig cfg;
    try {
        if (traj->parsed()) {
            cfg.command = "traj";
            if (trajBag.configPath) merge_config(*trajBag.configPath, cfg, trajBag);
            apply_flags(cfg, trajBag);
        } else if (sw->parsed()) {
            cfg.command = "sweep";
            if (sweepBag.configPath) merge_config(*sweepBag.configPath, cfg, sweepBag);
            apply_flags(cfg, sweepBag);
        } else {
            cfg.command = "check";
            cfg.suite = suiteName;
        }
    } catch (const kdq::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const kdq::Error& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    }

    return kdq::run_command(cfg);
}

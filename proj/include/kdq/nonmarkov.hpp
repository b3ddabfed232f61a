#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kdq/channels.hpp"
#include "kdq/coherence.hpp"
#include "kdq/errors.hpp"
#include "kdq/kd.hpp"
#include "kdq/quadrature.hpp"

namespace kdq {

struct TimeGrid {
    double tMax = 10.0;
    std::size_t n = 1024;

    void validate() const {
        if (n < 16) throw ParamError("TimeGrid: need at least 16 samples");
        if (!(tMax > 0.0)) throw ParamError("TimeGrid: tMax must be positive");
    }
    double time(std::size_t i) const { return tMax * static_cast<double>(i) / (n - 1); }
};

struct BasisMode {
    bool optimized = false;
    std::vector<BlochAngles> angles;  // used when fixed

    static BasisMode fixed(std::vector<BlochAngles> a) { return {false, std::move(a)}; }
    static BasisMode optimize() { return {true, {}}; }
};

// Fiducial initial states used throughout the figures: the maximally coherent
// qubit and the two-qubit Bell state.
inline DensityMatrix fiducial_state(ChannelKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    if (kind == ChannelKind::Dephase1Q || kind == ChannelKind::Damp1Q)
        return density_from_pure({cplx{r, 0.0}, cplx{r, 0.0}});
    return density_from_pure({cplx{r, 0.0}, {}, {}, cplx{r, 0.0}});
}

// Second-basis angles that realize the closed forms of each scenario. The
// damping channels need the quarter phase so the real amplitude lands in the
// imaginary part of the table.
inline std::vector<BlochAngles> default_fixed_angles(ChannelKind kind) {
    constexpr double kPi = 3.14159265358979323846;
    switch (kind) {
        case ChannelKind::Dephase1Q:
        case ChannelKind::Damp1Q:
            return {{kPi / 2.0, kPi / 2.0}};
        case ChannelKind::Dephase2Q:
            return {{kPi / 2.0, 0.0}, {kPi / 2.0, 0.0}};
        case ChannelKind::Damp2Q:
            return {{kPi / 2.0, kPi / 2.0}, {kPi / 2.0, 0.0}};
    }
    throw ParamError("default_fixed_angles: unknown channel kind");
}

struct CoherenceTrajectory {
    TimeGrid grid;
    std::vector<double> ckd;
    std::vector<double> l1;
    std::vector<double> nc;
    ChannelKind channel;
    BasisMode basisMode;
};

inline CoherenceTrajectory trajectory(const ChannelModel& model, const DensityMatrix& rho0,
                                      const TimeGrid& grid, const BasisMode& basisMode,
                                      const OptimizerConfig& cfg = {}) {
    grid.validate();
    if (rho0.dim() != model.dim())
        throw DimensionError("trajectory: state dimension does not match channel");
    const auto ref = OrthonormalBasis::computational(rho0.dim());

    CoherenceTrajectory out;
    out.grid = grid;
    out.channel = model.kind;
    out.basisMode = basisMode;
    out.ckd.reserve(grid.n);
    out.l1.reserve(grid.n);
    out.nc.reserve(grid.n);

    const BasisMode mode = (!basisMode.optimized && basisMode.angles.empty())
                               ? BasisMode::fixed(default_fixed_angles(model.kind))
                               : basisMode;
    OrthonormalBasis fixedBasis =
        mode.optimized ? ref : basis_from_angles(mode.angles);

    for (std::size_t i = 0; i < grid.n; ++i) {
        const DensityMatrix rt = evolve(model, rho0, grid.time(i));
        if (mode.optimized) {
            const CoherenceResult r = ckd(rt, ref, cfg);
            out.ckd.push_back(r.value);
            out.nc.push_back(nonclassicality_total(rt, ref, basis_from_angles(r.argmaxAngles)));
        } else {
            out.ckd.push_back(ckd_fixed(rt, ref, fixedBasis));
            out.nc.push_back(nonclassicality_total(rt, ref, fixedBasis));
        }
        out.l1.push_back(l1_coherence(rt, ref));
    }
    return out;
}

struct VariationResult {
    double total = 0.0;
    std::vector<std::pair<double, double>> ascendingIntervals;
};

// Sum of rises of the sampled sequence; equals the integral of the positive
// slope of the piecewise-linear interpolant.
inline VariationResult positive_variation(const std::vector<double>& values,
                                          const TimeGrid& grid) {
    if (values.size() < 2) throw ParamError("positive_variation: need at least two samples");
    if (values.size() != grid.n)
        throw DimensionError("positive_variation: sequence length does not match grid");
    VariationResult r;
    bool ascending = false;
    double start = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        if (d > 0.0) {
            r.total += d;
            if (!ascending) {
                ascending = true;
                start = grid.time(i - 1);
            }
        } else if (ascending) {
            ascending = false;
            r.ascendingIntervals.emplace_back(start, grid.time(i - 1));
        }
    }
    if (ascending) r.ascendingIntervals.emplace_back(start, grid.time(values.size() - 1));
    return r;
}

struct MeasureResult {
    double nCkd = 0.0;
    double nCl1 = 0.0;
    std::vector<std::pair<double, double>> ascendingIntervals;
};

inline MeasureResult n_ckd(const ChannelModel& model, const DensityMatrix& rho0,
                           const TimeGrid& grid, const BasisMode& basisMode,
                           const OptimizerConfig& cfg = {}) {
    const CoherenceTrajectory traj = trajectory(model, rho0, grid, basisMode, cfg);
    VariationResult vc = positive_variation(traj.ckd, grid);
    const VariationResult vl = positive_variation(traj.l1, grid);
    return {vc.total, vl.total, std::move(vc.ascendingIntervals)};
}

// Dephasing fast path: quadrature of -gamma(t) R(t) over the sub-intervals
// where gamma < 0, with the interval endpoints known in closed form.
inline double n_ckd_dephasing_analytic(const OhmicParams& p, double tMax) {
    p.validate();
    if (!(tMax > 0.0)) throw ParamError("n_ckd_dephasing_analytic: tMax must be positive");
    const std::vector<double> roots = gamma_ohmic_roots(p, tMax);
    if (roots.empty()) return 0.0;

    auto integrand = [&p](double t) {
        return -gamma_ohmic(t, p) * std::exp(-2.0 * zeta(t, p));
    };
    double total = 0.0;
    // gamma is negative on (t1, t2), (t3, t4), ... and past the last root when
    // the root count is odd
    for (std::size_t k = 0; k < roots.size(); k += 2) {
        const double a = roots[k];
        const double b = (k + 1 < roots.size()) ? std::min(roots[k + 1], tMax) : tMax;
        if (b > a) total += integrate(integrand, a, b, 1e-10);
    }
    return total;
}

// Damping fast path: half the total rise of |B|, with monotonicity switches
// located by bisection on Re(B' conj(B)), the derivative of |B|^2 / 2.
inline double n_ckd_damping_analytic(const LorentzParams& p, double tMax) {
    p.validate();
    if (!(tMax > 0.0)) throw ParamError("n_ckd_damping_analytic: tMax must be positive");
    auto slope = [&p](double t) {
        const cplx b = b_analytic(t, p);
        return (b_dot_analytic(t, p) * std::conj(b)).real();
    };
    const std::size_t scan = 4096;
    std::vector<double> switches = {0.0};
    double prev = slope(tMax * 1e-9);
    for (std::size_t i = 1; i <= scan; ++i) {
        const double t = tMax * static_cast<double>(i) / scan;
        const double s = slope(t);
        if ((s > 0.0) != (prev > 0.0) && s != 0.0)
            switches.push_back(bisect(slope, tMax * static_cast<double>(i - 1) / scan, t));
        prev = s;
    }
    switches.push_back(tMax);

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < switches.size(); ++k) {
        const double lo = std::abs(b_analytic(switches[k], p));
        const double hi = std::abs(b_analytic(switches[k + 1], p));
        if (hi > lo) total += 0.5 * (hi - lo);
    }
    return total;
}

// Exhaustive variant of the measure: maximize over a coarse grid of pure
// single-qubit initial states (the fiducial |+> is always included first, so
// the result never falls below the default). Two-qubit channels keep the
// fiducial Bell state; a product-state grid would miss the entangled inputs
// the figures use anyway.
inline MeasureResult n_ckd_max_initial(const ChannelModel& model, const TimeGrid& grid,
                                       const BasisMode& basisMode, int statesPerAngle = 8,
                                       const OptimizerConfig& cfg = {}) {
    if (model.dim() != 2)
        throw DimensionError("n_ckd_max_initial: initial-state search covers single qubits only");
    if (statesPerAngle < 2) throw ParamError("n_ckd_max_initial: need at least 2 grid states");
    constexpr double kPi = 3.14159265358979323846;

    MeasureResult best = n_ckd(model, fiducial_state(model.kind), grid, basisMode, cfg);
    for (int i = 0; i < statesPerAngle; ++i)
        for (int j = 0; j < statesPerAngle; ++j) {
            const double theta = kPi * (i + 0.5) / statesPerAngle;
            const double phi = 2.0 * kPi * j / statesPerAngle;
            const DensityMatrix rho0 = density_from_pure(
                {cplx{std::cos(theta / 2.0), 0.0}, std::polar(std::sin(theta / 2.0), phi)});
            MeasureResult m = n_ckd(model, rho0, grid, basisMode, cfg);
            if (m.nCkd > best.nCkd) best = std::move(m);
        }
    return best;
}

struct SweepRow {
    double paramValue = 0.0;
    double nCkd = 0.0;
    double nCl1 = 0.0;
    bool ok = true;
    std::string error;
};

namespace detail {

inline ChannelModel with_param(const ChannelModel& proto, const std::string& name, double value) {
    if (std::holds_alternative<OhmicParams>(proto.params)) {
        OhmicParams p = std::get<OhmicParams>(proto.params);
        if (name == "s")
            p.s = value;
        else if (name == "omega-c")
            p.omegaC = value;
        else
            throw ParamError("sweep: unknown parameter '" + name + "' for this channel");
        return {proto.kind, p};
    }
    if (std::holds_alternative<LorentzParams>(proto.params)) {
        LorentzParams p = std::get<LorentzParams>(proto.params);
        if (name == "kappa-over-gamma0")
            p.kappa = value * p.gamma0;
        else if (name == "kappa")
            p.kappa = value;
        else if (name == "gamma0")
            p.gamma0 = value;
        else if (name == "varpi")
            p.varpi = value;
        else
            throw ParamError("sweep: unknown parameter '" + name + "' for this channel");
        return {proto.kind, p};
    }
    TwoQubitDephasingParams p = std::get<TwoQubitDephasingParams>(proto.params);
    if (name == "s")
        p.ohmic.s = value;
    else if (name == "omega-c")
        p.ohmic.omegaC = value;
    else if (name == "h1")
        p.h1 = value;
    else if (name == "h2")
        p.h2 = value;
    else if (name == "lambda")
        p.lambda = value;
    else
        throw ParamError("sweep: unknown parameter '" + name + "' for this channel");
    return {proto.kind, p};
}

inline bool param_known(const ChannelModel& proto, const std::string& name) {
    if (std::holds_alternative<OhmicParams>(proto.params))
        return name == "s" || name == "omega-c";
    if (std::holds_alternative<LorentzParams>(proto.params))
        return name == "kappa-over-gamma0" || name == "kappa" || name == "gamma0" ||
               name == "varpi";
    return name == "s" || name == "omega-c" || name == "h1" || name == "h2" || name == "lambda";
}

}  // namespace detail

// One n_ckd evaluation per parameter value; failed rows are kept with their
// error message so the sweep always completes.
inline std::vector<SweepRow> sweep(const ChannelModel& proto, const std::string& paramName,
                                   double from, double to, std::size_t steps,
                                   const TimeGrid& grid, const BasisMode& basisMode,
                                   const OptimizerConfig& cfg = {}) {
    if (steps < 1) throw ParamError("sweep: need at least one step");
    if (!(to >= from)) throw ParamError("sweep: empty parameter range");
    if (!detail::param_known(proto, paramName))
        throw ParamError("sweep: unknown parameter '" + paramName + "' for this channel");
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double value =
            steps == 1 ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
        SweepRow row;
        row.paramValue = value;
        try {
            const ChannelModel model = detail::with_param(proto, paramName, value);
            const MeasureResult m =
                n_ckd(model, fiducial_state(model.kind), grid, basisMode, cfg);
            row.nCkd = m.nCkd;
            row.nCl1 = m.nCl1;
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace kdq

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "kdq/errors.hpp"
#include "kdq/qmath.hpp"
#include "kdq/quadrature.hpp"

namespace kdq {

// Ohmic-family reservoir spectral density (omega/omegaC)^s * exp(-omega/omegaC).
struct OhmicParams {
    double s = 1.0;       // ohmicity
    double omegaC = 1.0;  // cutoff frequency

    void validate() const {
        if (!(s > 0.0)) throw ParamError("OhmicParams: s must be positive");
        if (!(omegaC > 0.0)) throw ParamError("OhmicParams: omega_c must be positive");
    }
};

// Lorentzian reservoir of width kappa, coupling gamma0, detuning varpi.
struct LorentzParams {
    double gamma0 = 1.0;
    double kappa = 1.0;
    double varpi = 0.0;

    void validate() const {
        if (!(gamma0 > 0.0)) throw ParamError("LorentzParams: gamma0 must be positive");
        if (!(kappa > 0.0)) throw ParamError("LorentzParams: kappa must be positive");
    }
};

struct TwoQubitDephasingParams {
    double h1 = 0.0;
    double h2 = 0.0;
    double lambda = 0.0;
    OhmicParams ohmic;

    void validate() const {
        if (!std::isfinite(h1) || !std::isfinite(h2) || !std::isfinite(lambda))
            throw ParamError("TwoQubitDephasingParams: couplings must be finite");
        ohmic.validate();
    }
};

enum class ChannelKind { Dephase1Q, Damp1Q, Dephase2Q, Damp2Q };

struct ChannelModel {
    ChannelKind kind;
    std::variant<OhmicParams, LorentzParams, TwoQubitDephasingParams> params;

    ChannelModel(ChannelKind k, OhmicParams p) : kind(k), params(p) {
        if (k != ChannelKind::Dephase1Q)
            throw ParamError("ChannelModel: ohmic parameters require the dephase1q kind");
        p.validate();
    }
    ChannelModel(ChannelKind k, LorentzParams p) : kind(k), params(p) {
        if (k != ChannelKind::Damp1Q && k != ChannelKind::Damp2Q)
            throw ParamError("ChannelModel: Lorentzian parameters require a damping kind");
        p.validate();
    }
    ChannelModel(ChannelKind k, TwoQubitDephasingParams p) : kind(k), params(p) {
        if (k != ChannelKind::Dephase2Q)
            throw ParamError("ChannelModel: two-qubit dephasing parameters require dephase2q");
        p.validate();
    }

    std::size_t dim() const {
        return (kind == ChannelKind::Dephase1Q || kind == ChannelKind::Damp1Q) ? 2 : 4;
    }
};

// Zero-temperature dephasing rate: omegaC * Gamma(s) * sin(s*arctan(omegaC t))
// / (1 + (omegaC t)^2)^(s/2). Changes sign for s > 2.
inline double gamma_ohmic(double t, const OhmicParams& p) {
    p.validate();
    const double x = p.omegaC * t;
    return p.omegaC * std::tgamma(p.s) * std::sin(p.s * std::atan(x)) /
           std::pow(1.0 + x * x, 0.5 * p.s);
}

// Compatibility variant with the unscaled arctan argument. Nonnegative for all
// t >= 0 regardless of s; kept for side-by-side comparison only.
inline double gamma_ohmic_compat(double t, const OhmicParams& p) {
    p.validate();
    const double x = p.omegaC * t;
    return p.omegaC * std::tgamma(p.s) * std::sin(std::atan(x)) /
           std::pow(1.0 + x * x, 0.5 * p.s);
}

// Times where gamma_ohmic crosses zero: s*arctan(omegaC t) = k*pi, k >= 1.
inline std::vector<double> gamma_ohmic_roots(const OhmicParams& p, double tMax) {
    std::vector<double> roots;
    constexpr double kPi = 3.14159265358979323846;
    for (int k = 1; k * kPi / p.s < kPi / 2.0; ++k) {
        const double t = std::tan(k * kPi / p.s) / p.omegaC;
        if (t < tMax) roots.push_back(t);
    }
    return roots;
}

// zeta(t) = integral of gamma over [0, t].
inline double zeta(double t, const OhmicParams& p) {
    p.validate();
    if (t == 0.0) return 0.0;
    return integrate([&p](double v) { return gamma_ohmic(v, p); }, 0.0, t, 1e-10,
                     gamma_ohmic_roots(p, t));
}

// R(t) = exp(-2 zeta(t)).
inline double dephase_factor(double t, const OhmicParams& p) { return std::exp(-2.0 * zeta(t, p)); }

// Single-qubit dephasing: populations fixed, off-diagonals scaled by R(t).
inline DensityMatrix dephasing_1q(const DensityMatrix& rho0, double t, const OhmicParams& p) {
    if (rho0.dim() != 2) throw DimensionError("dephasing_1q: state must be a single qubit");
    const double r = dephase_factor(t, p);
    ComplexMatrix m(2, 2);
    m(0, 0) = rho0(0, 0);
    m(1, 1) = rho0(1, 1);
    m(0, 1) = r * rho0(0, 1);
    m(1, 0) = r * rho0(1, 0);
    return DensityMatrix(std::move(m));
}

namespace detail {

inline cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

}  // namespace detail

// Amplitude of the excited level under the Lorentzian reservoir:
// B(t) = e^{-(kappa - i varpi) t / 2} [cosh(Dt/2) + ((kappa - i varpi)/D) sinh(Dt/2)],
// D = sqrt((kappa - i varpi)^2 - 2 gamma0 kappa). Written through sinh(z)/z so the
// critical case D -> 0 reduces exactly to e^{-at}(1 + at). Satisfies B(0) = 1,
// B'(0) = 0, which is what the memory-kernel equation forces.
inline cplx b_analytic(double t, const LorentzParams& p) {
    p.validate();
    const cplx a = 0.5 * cplx{p.kappa, -p.varpi};
    const cplx delta = std::sqrt(4.0 * a * a - 2.0 * p.gamma0 * p.kappa);
    const cplx z = 0.5 * delta * t;
    return std::exp(-a * t) * (std::cosh(z) + a * t * detail::sinhc(z));
}

// Variant with the sinh coefficient (kappa - i varpi)/2 instead of
// (kappa - i varpi)/D. Violates B'(0) = 0; kept for comparison against the
// memory-kernel solver.
inline cplx b_analytic_compat(double t, const LorentzParams& p) {
    p.validate();
    const cplx a = 0.5 * cplx{p.kappa, -p.varpi};
    const cplx delta = std::sqrt(4.0 * a * a - 2.0 * p.gamma0 * p.kappa);
    const cplx z = 0.5 * delta * t;
    return std::exp(-a * t) * (std::cosh(z) + a * std::sinh(z));
}

// dB/dt = -(gamma0 kappa / D) e^{-at} sinh(Dt/2), again via sinh(z)/z.
inline cplx b_dot_analytic(double t, const LorentzParams& p) {
    const cplx a = 0.5 * cplx{p.kappa, -p.varpi};
    const cplx delta = std::sqrt(4.0 * a * a - 2.0 * p.gamma0 * p.kappa);
    const cplx z = 0.5 * delta * t;
    return -p.gamma0 * p.kappa * 0.5 * t * std::exp(-a * t) * detail::sinhc(z);
}

// Reservoir correlation kernel: Fourier transform of the Lorentzian density,
// G(tau) = (gamma0 kappa / 2) e^{-(kappa - i varpi) tau} for tau >= 0.
inline cplx kernel_lorentzian(double tau, const LorentzParams& p) {
    return 0.5 * p.gamma0 * p.kappa * std::exp(cplx{-p.kappa * tau, p.varpi * tau});
}

// Numerical solution of B'(t) = -int_0^t G(t - u) B(u) du, B(0) = 1, on a
// uniform grid of the given step: trapezoidal history quadrature with an
// Euler predictor and trapezoidal corrector per step. Global error O(h^2).
// Kernel values are precomputed once since the grid is uniform.
inline std::vector<cplx> b_volterra(std::size_t nSamples, double h, const LorentzParams& p) {
    p.validate();
    if (!(h > 0.0)) throw ParamError("b_volterra: step must be positive");
    if (h * p.kappa > 0.5) throw StepSizeError("b_volterra: step too large for the kernel");
    if (nSamples < 2) throw ParamError("b_volterra: need at least two samples");

    std::vector<cplx> g(nSamples);
    for (std::size_t m = 0; m < nSamples; ++m) g[m] = kernel_lorentzian(m * h, p);

    std::vector<cplx> b(nSamples), f(nSamples);
    b[0] = 1.0;
    f[0] = 0.0;  // forced by the vanishing integration range
    for (std::size_t k = 1; k < nSamples; ++k) {
        // history part of the trapezoid rule, everything except the new endpoint
        cplx hist = 0.5 * g[k] * b[0];
        for (std::size_t j = 1; j < k; ++j) hist += g[k - j] * b[j];
        const cplx predictor = b[k - 1] + h * f[k - 1];
        cplx fk = -h * (hist + 0.5 * g[0] * predictor);
        b[k] = b[k - 1] + 0.5 * h * (f[k - 1] + fk);
        // refresh the derivative with the corrected endpoint value
        f[k] = -h * (hist + 0.5 * g[0] * b[k]);
    }
    return b;
}

// Single-qubit amplitude damping, elementwise form of the Kraus pair
// K1 = diag(1, B), K2 = sqrt(1 - |B|^2) |0><1|.
inline DensityMatrix damping_1q(const DensityMatrix& rho0, double t, const LorentzParams& p) {
    if (rho0.dim() != 2) throw DimensionError("damping_1q: state must be a single qubit");
    const cplx b = b_analytic(t, p);
    const double x = std::norm(b);
    ComplexMatrix m(2, 2);
    m(1, 1) = x * rho0(1, 1);
    m(0, 0) = 1.0 - m(1, 1);
    m(0, 1) = std::conj(b) * rho0(0, 1);
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix(std::move(m));
}

inline std::vector<ComplexMatrix> damping_kraus(cplx b) {
    ComplexMatrix k1(2, 2), k2(2, 2);
    k1(0, 0) = 1.0;
    k1(1, 1) = b;
    k2(0, 1) = std::sqrt(std::max(0.0, 1.0 - std::norm(b)));
    return {k1, k2};
}

// Two qubits coupled to a shared dephasing reservoir. Populations invariant;
// coherences pick up Hamiltonian phases and powers of e^{-2 zeta}. The (2,3)
// element sits in the decoherence-free pair of s_z and only rotates.
inline DensityMatrix dephasing_2q(const DensityMatrix& rho0, double t,
                                  const TwoQubitDephasingParams& p) {
    if (rho0.dim() != 4) throw DimensionError("dephasing_2q: state must be two qubits");
    p.validate();
    const double z = zeta(t, p.ohmic);
    const double r2 = std::exp(-2.0 * z);
    const double r8 = std::exp(-8.0 * z);
    auto phase = [](double w) { return std::polar(1.0, w); };

    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = rho0(i, i);
    m(0, 3) = rho0(0, 3) * phase(-(p.h1 + p.h2) * t) * r8;
    m(1, 2) = rho0(1, 2) * phase(-(p.h1 - p.h2) * t);
    m(0, 1) = rho0(0, 1) * phase(-(p.lambda + p.h2) * t) * r2;
    m(0, 2) = rho0(0, 2) * phase(-(p.lambda + p.h1) * t) * r2;
    m(1, 3) = rho0(1, 3) * phase((p.lambda - p.h1) * t) * r2;
    m(2, 3) = rho0(2, 3) * phase((p.lambda - p.h2) * t) * r2;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    return DensityMatrix(std::move(m));
}

// Two-qubit amplitude damping driven by the same B(t); index 1 is the doubly
// excited level, index 4 the ground level that completes the trace.
inline DensityMatrix damping_2q(const DensityMatrix& rho0, double t, const LorentzParams& p) {
    if (rho0.dim() != 4) throw DimensionError("damping_2q: state must be two qubits");
    const cplx b = b_analytic(t, p);
    const double x = std::norm(b);

    ComplexMatrix m(4, 4);
    m(0, 0) = x * x * rho0(0, 0);
    m(1, 1) = x * (1.0 - x) * rho0(0, 0) + x * rho0(1, 1);
    m(2, 2) = x * (1.0 - x) * rho0(0, 0) + x * rho0(2, 2);
    m(3, 3) = 1.0 - (m(0, 0) + m(1, 1) + m(2, 2));
    m(0, 1) = x * b * rho0(0, 1);
    m(0, 2) = x * b * rho0(0, 2);
    m(0, 3) = b * b * rho0(0, 3);
    m(1, 2) = x * rho0(1, 2);
    m(1, 3) = b * (1.0 - x) * rho0(0, 1) + b * rho0(1, 3);
    m(2, 3) = b * (1.0 - x) * rho0(0, 2) + b * rho0(2, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    return DensityMatrix(std::move(m));
}

// Evolve through the channel a model describes.
inline DensityMatrix evolve(const ChannelModel& model, const DensityMatrix& rho0, double t) {
    switch (model.kind) {
        case ChannelKind::Dephase1Q:
            return dephasing_1q(rho0, t, std::get<OhmicParams>(model.params));
        case ChannelKind::Damp1Q:
            return damping_1q(rho0, t, std::get<LorentzParams>(model.params));
        case ChannelKind::Dephase2Q:
            return dephasing_2q(rho0, t, std::get<TwoQubitDephasingParams>(model.params));
        case ChannelKind::Damp2Q:
            return damping_2q(rho0, t, std::get<LorentzParams>(model.params));
    }
    throw ParamError("evolve: unknown channel kind");
}

}  // namespace kdq

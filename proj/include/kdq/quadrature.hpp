#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "kdq/errors.hpp"

namespace kdq {

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss weights aligned with Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {0.129484966168870, 0.279705391489277,
                                                 0.381830050505119, 0.417959183673469};

struct GkResult {
    double value;
    double error;
};

template <typename F>
GkResult gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = kKronrodWeights[7] * f(mid);
    double gauss = kGaussWeights[3] * f(mid);
    for (std::size_t i = 0; i < 7; ++i) {
        const double fx = f(mid - half * kKronrodNodes[i]) + f(mid + half * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * fx;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fx;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

// Adaptive quadrature of f over [a, b] to an absolute tolerance. The optional
// breakpoints force subdivision at known awkward spots (integrand sign
// changes, kinks) before adaptivity takes over.
template <typename F>
double integrate(const F& f, double a, double b, double absTol,
                 const std::vector<double>& breakpoints = {}) {
    if (a == b) return 0.0;
    struct Segment {
        double a, b, value, error;
    };
    std::vector<double> edges = {a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());

    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto r = detail::gk15(f, edges[i], edges[i + 1]);
        segs.push_back({edges[i], edges[i + 1], r.value, r.error});
    }

    for (int iter = 0; iter < 2000; ++iter) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        if (err <= absTol) return total;
        const Segment s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b)
            throw IntegrationError("integrate: interval too small to subdivide further");
        auto left = detail::gk15(f, s.a, m);
        auto right = detail::gk15(f, m, s.b);
        segs[worst] = {s.a, m, left.value, left.error};
        segs.push_back({m, s.b, right.value, right.error});
    }
    throw IntegrationError("integrate: tolerance not reached within subdivision budget");
}

// Bisection on a bracketing interval; f(a) and f(b) must differ in sign.
template <typename F>
double bisect(const F& f, double a, double b, double relTol = 1e-10) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw ParamError("bisect: endpoints do not bracket a sign change");
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0 || (b - a) <= relTol * (std::abs(m) + 1.0)) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace kdq

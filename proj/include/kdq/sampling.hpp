#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "kdq/complex_matrix.hpp"
#include "kdq/qmath.hpp"

namespace kdq {

// Deterministic generators for property suites. All draws go through an
// explicitly seeded engine so every run sees the same sample set.
using Rng = std::mt19937_64;

inline std::vector<cplx> random_pure(std::size_t d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(d);
    double norm2 = 0.0;
    for (auto& c : v) {
        c = cplx{gauss(rng), gauss(rng)};
        norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : v) c *= inv;
    return v;
}

// Ginibre construction: G G^dagger normalized to unit trace.
inline DensityMatrix random_density(std::size_t d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = cplx{gauss(rng), gauss(rng)};
    ComplexMatrix m = g * g.adjoint();
    const double tr = m.trace().real();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) /= tr;
    return DensityMatrix(std::move(m));
}

inline DensityMatrix random_diagonal_density(std::size_t d, Rng& rng) {
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    std::vector<double> p(d);
    double sum = 0.0;
    for (auto& x : p) {
        x = uni(rng);
        sum += x;
    }
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = p[i] / sum;
    return DensityMatrix(std::move(m));
}

// Haar-ish unitary via Gram-Schmidt on a Ginibre matrix; distribution details
// do not matter for the property suites, determinism and unitarity do.
inline ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<cplx>> cols(d, std::vector<cplx>(d));
    for (auto& col : cols)
        for (auto& c : col) c = cplx{gauss(rng), gauss(rng)};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            cplx proj{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) proj += std::conj(cols[j][k]) * cols[i][k];
            for (std::size_t k = 0; k < d; ++k) cols[i][k] -= proj * cols[j][k];
        }
        double norm2 = 0.0;
        for (const auto& c : cols[i]) norm2 += std::norm(c);
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : cols[i]) c *= inv;
    }
    ComplexMatrix u(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) u(i, j) = cols[j][i];
    return u;
}

inline BlochAngles random_angles(Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    constexpr double kPi = 3.14159265358979323846;
    return {kPi * uni(rng), 2.0 * kPi * uni(rng)};
}

// Convex mixture of diagonal-phase unitaries: an incoherent random-unitary
// channel given as Kraus operators sqrt(p_k) D_k.
inline std::vector<ComplexMatrix> random_incoherent_mixture(std::size_t d, std::size_t terms,
                                                            Rng& rng) {
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
    std::vector<double> p(terms);
    double sum = 0.0;
    for (auto& x : p) {
        x = uni(rng);
        sum += x;
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(terms);
    for (std::size_t k = 0; k < terms; ++k) {
        ComplexMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            m(i, i) = std::sqrt(p[k] / sum) * std::polar(1.0, phase(rng));
        kraus.push_back(std::move(m));
    }
    return kraus;
}

}  // namespace kdq

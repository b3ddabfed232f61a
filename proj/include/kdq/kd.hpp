#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "kdq/errors.hpp"
#include "kdq/qmath.hpp"

namespace kdq {

// Table of quasiprobabilities entry[mu][nu] = <nu|mu><mu|rho|nu> over a pair
// of orthonormal bases. Entries sum to 1; row/column sums are the Born
// probabilities in the respective basis.
struct KDTable {
    std::size_t dim;
    std::vector<cplx> entries;  // row-major, [mu * dim + nu]
    OrthonormalBasis basisMu;
    OrthonormalBasis basisNu;

    const cplx& at(std::size_t mu, std::size_t nu) const { return entries[mu * dim + nu]; }
};

inline KDTable kd_table(const DensityMatrix& rho, const OrthonormalBasis& basisMu,
                        const OrthonormalBasis& basisNu) {
    const std::size_t d = rho.dim();
    if (basisMu.dim() != d || basisNu.dim() != d)
        throw DimensionError("kd_table: basis dimension does not match state");
    std::vector<cplx> entries(d * d);
    for (std::size_t mu = 0; mu < d; ++mu) {
        // row vector <mu|rho
        std::vector<cplx> muRho(d, cplx{0.0, 0.0});
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                muRho[j] += std::conj(basisMu.vec(mu)[k]) * rho(k, j);
        for (std::size_t nu = 0; nu < d; ++nu) {
            cplx nuMu = inner(basisNu.vec(nu), basisMu.vec(mu));
            cplx muRhoNu{0.0, 0.0};
            for (std::size_t j = 0; j < d; ++j) muRhoNu += muRho[j] * basisNu.vec(nu)[j];
            entries[mu * d + nu] = nuMu * muRhoNu;
        }
    }
    return KDTable{d, std::move(entries), basisMu, basisNu};
}

// Row and column sums, imaginary residue discarded after a sanity check.
inline std::pair<std::vector<double>, std::vector<double>> kd_marginals(const KDTable& table) {
    const std::size_t d = table.dim;
    std::vector<double> muProbs(d, 0.0), nuProbs(d, 0.0);
    for (std::size_t mu = 0; mu < d; ++mu) {
        cplx row{0.0, 0.0};
        for (std::size_t nu = 0; nu < d; ++nu) row += table.at(mu, nu);
        if (std::abs(row.imag()) > 1e-8)
            throw MarginalError("kd_marginals: row sum has non-negligible imaginary part");
        muProbs[mu] = row.real();
    }
    for (std::size_t nu = 0; nu < d; ++nu) {
        cplx col{0.0, 0.0};
        for (std::size_t mu = 0; mu < d; ++mu) col += table.at(mu, nu);
        if (std::abs(col.imag()) > 1e-8)
            throw MarginalError("kd_marginals: column sum has non-negligible imaginary part");
        nuProbs[nu] = col.real();
    }
    return {std::move(muProbs), std::move(nuProbs)};
}

// rho = sum_{mu,nu} P(mu,nu) |mu><nu| / <nu|mu>. The denominator conjugation
// matches the entry convention <nu|mu><mu|rho|nu>, so the weight collapses to
// <mu|rho|nu> and the double sum is an exact resolution of the state.
// Requires all overlaps nonzero.
inline DensityMatrix reconstruct_state(const KDTable& table) {
    const std::size_t d = table.dim;
    for (std::size_t mu = 0; mu < d; ++mu)
        for (std::size_t nu = 0; nu < d; ++nu)
            if (std::abs(inner(table.basisMu.vec(mu), table.basisNu.vec(nu))) <= 1e-8)
                throw OverlapError("reconstruct_state: vanishing basis overlap");
    ComplexMatrix m(d, d);
    for (std::size_t mu = 0; mu < d; ++mu)
        for (std::size_t nu = 0; nu < d; ++nu) {
            const cplx w = table.at(mu, nu) / inner(table.basisNu.vec(nu), table.basisMu.vec(mu));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    m(i, j) += w * table.basisMu.vec(mu)[i] * std::conj(table.basisNu.vec(nu)[j]);
        }
    return DensityMatrix(std::move(m));
}

inline double imag_l1(const KDTable& table) {
    double s = 0.0;
    for (const auto& e : table.entries) s += std::abs(e.imag());
    return s;
}

namespace detail {

// sum over (i,j) of |Re S_ij| + |Im S_ij| with
// S_ij = sum_k <mu_i|rho|mu_k><mu_k|nu_j><nu_j|mu_i>, k restricted by the caller.
inline double nc_sum(const DensityMatrix& rho, const OrthonormalBasis& basisMu,
                     const OrthonormalBasis& basisNu, bool includeDiagonal) {
    const std::size_t d = rho.dim();
    if (basisMu.dim() != d || basisNu.dim() != d)
        throw DimensionError("nonclassicality: basis dimension does not match state");
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) {
                if (!includeDiagonal && k == i) continue;
                cplx muiRhoMuk{0.0, 0.0};
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b)
                        muiRhoMuk += std::conj(basisMu.vec(i)[a]) * rho(a, b) * basisMu.vec(k)[b];
                const cplx mukNuj = inner(basisMu.vec(k), basisNu.vec(j));
                const cplx nujMui = inner(basisNu.vec(j), basisMu.vec(i));
                s += muiRhoMuk * mukNuj * nujMui;
            }
            total += std::abs(s.real()) + std::abs(s.imag());
        }
    return total;
}

}  // namespace detail

// Interference-only reading: the k = i term is excluded and the projector is
// indexed by the second sum variable, so the j-sum is non-degenerate.
inline double nonclassicality(const DensityMatrix& rho, const OrthonormalBasis& basisMu,
                              const OrthonormalBasis& basisNu) {
    return detail::nc_sum(rho, basisMu, basisNu, /*includeDiagonal=*/false);
}

// Variant keeping the k = i term, halved. For a dephasing qubit probed in the
// computational/y bases this evaluates to (1 + R)/2.
inline double nonclassicality_total(const DensityMatrix& rho, const OrthonormalBasis& basisMu,
                                    const OrthonormalBasis& basisNu) {
    return 0.5 * detail::nc_sum(rho, basisMu, basisNu, /*includeDiagonal=*/true);
}

}  // namespace kdq

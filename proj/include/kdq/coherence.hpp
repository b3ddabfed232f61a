#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kdq/errors.hpp"
#include "kdq/kd.hpp"
#include "kdq/qmath.hpp"

namespace kdq {

struct OptimizerConfig {
    int gridPoints = 24;   // per angle
    int refineIters = 60;  // compass-search rounds after the grid stage
    double tolerance = 1e-8;

    void validate() const {
        if (gridPoints < 4) throw ParamError("OptimizerConfig: gridPoints must be >= 4");
        if (refineIters < 1) throw ParamError("OptimizerConfig: refineIters must be >= 1");
        if (!(tolerance > 0.0)) throw ParamError("OptimizerConfig: tolerance must be positive");
    }
};

struct CoherenceResult {
    double value = 0.0;
    std::vector<BlochAngles> argmaxAngles;  // one entry per qubit
    long evaluations = 0;
};

inline OrthonormalBasis basis_from_angles(const std::vector<BlochAngles>& angles) {
    if (angles.size() == 1) return bloch_basis(angles[0]);
    if (angles.size() == 2)
        return product_basis(bloch_basis(angles[0]), bloch_basis(angles[1]));
    throw DimensionError("basis_from_angles: expected one or two qubits");
}

// Coherence read off a fixed basis pair: (1/d) * sum |Im P_KD|. The 1/d scale
// makes the functional coincide with the channel closed forms at both d = 2
// and d = 4 (R/2, |B|/2, |R^4 sin|/4, |B|^2/4 for the canonical scenarios).
inline double ckd_fixed(const DensityMatrix& rho, const OrthonormalBasis& refBasis,
                        const OrthonormalBasis& secondBasis) {
    if (refBasis.dim() != rho.dim() || secondBasis.dim() != rho.dim())
        throw DimensionError("ckd_fixed: basis dimension does not match state");
    return imag_l1(kd_table(rho, refBasis, secondBasis)) / static_cast<double>(rho.dim());
}

namespace detail {

constexpr double kPi = 3.14159265358979323846;

inline void clamp_angles(std::vector<BlochAngles>& a) {
    for (auto& q : a) {
        q.alpha = std::min(std::max(q.alpha, 0.0), kPi);
        q.beta = std::fmod(q.beta, 2.0 * kPi);
        if (q.beta < 0.0) q.beta += 2.0 * kPi;
    }
}

}  // namespace detail

// Maximize ckd_fixed over the second basis: all Bloch bases for one qubit,
// product bases (four angles) for two qubits. Coarse grid, then deterministic
// compass refinement from the best grid point. Ties on the grid resolve to the
// first point in scan order, i.e. the lexicographically smallest angle tuple.
inline CoherenceResult ckd(const DensityMatrix& rho, const OrthonormalBasis& refBasis,
                           const OptimizerConfig& cfg = {}) {
    cfg.validate();
    if (refBasis.dim() != rho.dim())
        throw DimensionError("ckd: basis dimension does not match state");
    const std::size_t nQubits = rho.dim() == 2 ? 1 : 2;

    CoherenceResult result;
    auto evaluate = [&](const std::vector<BlochAngles>& angles) {
        ++result.evaluations;
        return ckd_fixed(rho, refBasis, basis_from_angles(angles));
    };

    const int g = cfg.gridPoints;
    std::vector<BlochAngles> best(nQubits), probe(nQubits);
    double bestVal = -1.0;
    // cell-centred alpha grid avoids stacking evaluations on the poles
    std::vector<double> alphas(g), betas(g);
    for (int i = 0; i < g; ++i) {
        alphas[i] = detail::kPi * (i + 0.5) / g;
        betas[i] = 2.0 * detail::kPi * i / g;
    }

    const std::size_t nAngles = 2 * nQubits;
    std::vector<long> stride(nAngles, 1);
    for (std::size_t k = nAngles - 1; k > 0; --k) stride[k - 1] = stride[k] * g;
    const long cells = stride[0] * g;
    for (long cell = 0; cell < cells; ++cell) {
        // digits ordered so earlier angles vary slowest -> lexicographic scan
        for (std::size_t q = 0; q < nQubits; ++q) {
            probe[q].alpha = alphas[(cell / stride[2 * q]) % g];
            probe[q].beta = betas[(cell / stride[2 * q + 1]) % g];
        }
        const double v = evaluate(probe);
        if (v > bestVal) {
            bestVal = v;
            best = probe;
        }
    }

    // compass search: probe +/- step along each coordinate, halve on failure
    double stepAlpha = detail::kPi / g;
    double stepBeta = 2.0 * detail::kPi / g;
    const double stepFloor = std::sqrt(cfg.tolerance) * 1e-2;
    for (int iter = 0; iter < cfg.refineIters; ++iter) {
        if (stepAlpha < stepFloor && stepBeta < stepFloor) break;
        bool improved = false;
        for (std::size_t q = 0; q < nQubits; ++q)
            for (int coord = 0; coord < 2; ++coord)
                for (int dir = -1; dir <= 1; dir += 2) {
                    probe = best;
                    if (coord == 0)
                        probe[q].alpha += dir * stepAlpha;
                    else
                        probe[q].beta += dir * stepBeta;
                    detail::clamp_angles(probe);
                    const double v = evaluate(probe);
                    if (v > bestVal) {
                        bestVal = v;
                        best = probe;
                        improved = true;
                    }
                }
        if (!improved) {
            stepAlpha *= 0.5;
            stepBeta *= 0.5;
        }
    }

    result.value = bestVal;
    result.argmaxAngles = best;
    return result;
}

// l1-norm coherence relative to a basis: sum of off-diagonal magnitudes of
// rho expressed in that basis.
inline double l1_coherence(const DensityMatrix& rho, const OrthonormalBasis& refBasis) {
    if (refBasis.dim() != rho.dim())
        throw DimensionError("l1_coherence: basis dimension does not match state");
    const std::size_t d = rho.dim();
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) continue;
            cplx e{0.0, 0.0};
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    e += std::conj(refBasis.vec(i)[a]) * rho(a, b) * refBasis.vec(j)[b];
            total += std::abs(e);
        }
    return total;
}

// ---- executable property checks -------------------------------------------

struct PropertyReport {
    std::string name;
    bool pass = true;
    double worstSlack = 0.0;  // most negative margin observed
    std::string note;
};

// A1 forward: diagonal states carry zero coherence.
inline PropertyReport check_a1_incoherent(const DensityMatrix& rho,
                                          const OrthonormalBasis& refBasis,
                                          const OptimizerConfig& cfg = {}) {
    const double v = ckd(rho, refBasis, cfg).value;
    return {"A1-incoherent", v <= 1e-10, -v, ""};
}

// A1 reverse: visible off-diagonals force nonzero coherence.
inline PropertyReport check_a1_coherent(const DensityMatrix& rho,
                                        const OrthonormalBasis& refBasis,
                                        const OptimizerConfig& cfg = {}) {
    const double v = ckd(rho, refBasis, cfg).value;
    return {"A1-coherent", v > 1e-4, v - 1e-4, ""};
}

// A2: evaluates both inequality directions for one mixture; the caller tallies.
struct ConvexityReport {
    double mixedValue = 0.0;
    double averageValue = 0.0;
};

inline ConvexityReport check_a2_mixture(const std::vector<DensityMatrix>& states,
                                        const std::vector<double>& weights,
                                        const OrthonormalBasis& refBasis,
                                        const OptimizerConfig& cfg = {}) {
    if (states.empty() || states.size() != weights.size())
        throw ParamError("check_a2_mixture: states/weights mismatch");
    const std::size_t d = states.front().dim();
    ComplexMatrix mix(d, d);
    double avg = 0.0, wsum = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (weights[k] < 0.0) throw ParamError("check_a2_mixture: negative weight");
        wsum += weights[k];
        mix = mix + cplx{weights[k], 0.0} * states[k].mat();
        avg += weights[k] * ckd(states[k], refBasis, cfg).value;
    }
    if (std::abs(wsum - 1.0) > 1e-10) throw ParamError("check_a2_mixture: weights must sum to 1");
    return {ckd(DensityMatrix(mix), refBasis, cfg).value, avg};
}

// A3: coherence is invariant when state and reference basis rotate together.
inline PropertyReport check_a3_covariance(const DensityMatrix& rho, const ComplexMatrix& unitary,
                                          const OrthonormalBasis& refBasis,
                                          const OptimizerConfig& cfg = {}) {
    const std::size_t d = rho.dim();
    if (unitary.rows() != d || unitary.cols() != d)
        throw DimensionError("check_a3_covariance: unitary dimension mismatch");
    if ((unitary.adjoint() * unitary).max_abs_diff(ComplexMatrix::identity(d)) > 1e-10)
        throw MapError("check_a3_covariance: matrix is not unitary");

    std::vector<std::vector<cplx>> rotated;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<cplx> v(d, cplx{0.0, 0.0});
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k) v[r] += unitary(r, k) * refBasis.vec(i)[k];
        rotated.push_back(std::move(v));
    }
    const DensityMatrix rhoRot(unitary * rho.mat() * unitary.adjoint());
    const double lhs = ckd(rhoRot, OrthonormalBasis(std::move(rotated)), cfg).value;
    const double rhs = ckd(rho, refBasis, cfg).value;
    const double slack = 2.0 * cfg.tolerance - std::abs(lhs - rhs);
    return {"A3", slack >= 0.0, slack, ""};
}

// A4: tracing out a subsystem cannot increase the coherence content. The
// comparison runs on the unnormalized imaginary sums, i.e. d * ckd, since the
// two sides live in different dimensions. The reduced argmax seeds extra
// bipartite evaluations as deterministic lower bounds on the product-basis
// maximum.
inline PropertyReport check_a4_partial_trace(const DensityMatrix& rhoAB,
                                             const OptimizerConfig& cfg = {}) {
    if (rhoAB.dim() != 4) throw DimensionError("check_a4_partial_trace: state must be 4x4");
    const auto compA = OrthonormalBasis::computational(2);
    const auto compAB = OrthonormalBasis::computational(4);
    const DensityMatrix rhoA = partial_trace(rhoAB, Subsystem::A);
    const CoherenceResult reduced = ckd(rhoA, compA, cfg);
    const double reducedRaw = 2.0 * reduced.value;

    double jointRaw = 4.0 * ckd(rhoAB, compAB, cfg).value;
    for (int j = 0; j < 4; ++j) {
        const BlochAngles nb{detail::kPi * (j + 0.5) / 4.0, detail::kPi * j / 2.0};
        jointRaw = std::max(jointRaw,
                            4.0 * ckd_fixed(rhoAB, compAB,
                                            basis_from_angles({reduced.argmaxAngles[0], nb})));
    }
    const double slack = jointRaw + cfg.tolerance - reducedRaw;
    return {"A4", slack >= 0.0, slack, ""};
}

// A5: monotonicity under an incoherent CPTP map given as Kraus operators.
inline PropertyReport check_a5_monotone(const DensityMatrix& rho,
                                        const std::vector<ComplexMatrix>& kraus,
                                        const OrthonormalBasis& refBasis,
                                        const OptimizerConfig& cfg = {}) {
    const std::size_t d = rho.dim();
    ComplexMatrix completeness(d, d);
    for (const auto& k : kraus) completeness = completeness + k.adjoint() * k;
    if (completeness.max_abs_diff(ComplexMatrix::identity(d)) > 1e-10)
        throw MapError("check_a5_monotone: Kraus set is not trace preserving");
    const double before = ckd(rho, refBasis, cfg).value;
    const double after = ckd(apply_kraus(rho, kraus), refBasis, cfg).value;
    const double slack = before + cfg.tolerance - after;
    return {"A5", slack >= 0.0, slack, ""};
}

}  // namespace kdq

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "kdq/complex_matrix.hpp"
#include "kdq/errors.hpp"

namespace kdq {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;

// d x d Hermitian, unit-trace, positive-semidefinite matrix with d in {2, 4}.
// Invariants are checked on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
        if (mat_.rows() != mat_.cols() || (mat_.rows() != 2 && mat_.rows() != 4))
            throw DimensionError("DensityMatrix: dimension must be 2 or 4");
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (std::abs(mat_(i, j) - std::conj(mat_(j, i))) > kHermTol)
                    throw StateError("DensityMatrix: not Hermitian");
        if (std::abs(mat_.trace() - cplx{1.0, 0.0}) > kTraceTol)
            throw StateError("DensityMatrix: trace differs from 1");
        const auto ev = hermitian_eigenvalues(mat_);
        if (ev.front() < -kPsdTol)
            throw StateError("DensityMatrix: negative eigenvalue");
    }

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

private:
    ComplexMatrix mat_;
};

// Ordered set of dim pairwise-orthogonal complex unit vectors.
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(std::vector<std::vector<cplx>> vectors)
        : vectors_(std::move(vectors)) {
        const std::size_t d = vectors_.size();
        if (d != 2 && d != 4) throw DimensionError("OrthonormalBasis: dimension must be 2 or 4");
        for (const auto& v : vectors_)
            if (v.size() != d) throw DimensionError("OrthonormalBasis: vector length mismatch");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                cplx ip{0.0, 0.0};
                for (std::size_t k = 0; k < d; ++k) ip += std::conj(vectors_[i][k]) * vectors_[j][k];
                const cplx expect = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                if (std::abs(ip - expect) > 1e-12)
                    throw StateError("OrthonormalBasis: vectors not orthonormal");
            }
    }

    static OrthonormalBasis computational(std::size_t d) {
        std::vector<std::vector<cplx>> vs(d, std::vector<cplx>(d, cplx{0.0, 0.0}));
        for (std::size_t i = 0; i < d; ++i) vs[i][i] = 1.0;
        return OrthonormalBasis(std::move(vs));
    }

    std::size_t dim() const { return vectors_.size(); }
    const std::vector<cplx>& vec(std::size_t i) const { return vectors_[i]; }

private:
    std::vector<std::vector<cplx>> vectors_;
};

// Bloch-sphere angles, alpha in [0, pi], beta in [0, 2*pi).
struct BlochAngles {
    double alpha = 0.0;
    double beta = 0.0;
};

inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx ip{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) ip += std::conj(a[k]) * b[k];
    return ip;
}

inline DensityMatrix density_from_pure(const std::vector<cplx>& psi) {
    double norm2 = 0.0;
    for (const auto& c : psi) norm2 += std::norm(c);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw NormalizationError("density_from_pure: input vector not normalized");
    const std::size_t d = psi.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(std::move(m));
}

enum class Subsystem { A, B };

// Standard reduction of a two-qubit state to one qubit.
inline DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4) throw DimensionError("partial_trace: state must be 4x4");
    ComplexMatrix r(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                if (keep == Subsystem::A)
                    r(i, j) += rho(2 * i + k, 2 * j + k);
                else
                    r(i, j) += rho(2 * k + i, 2 * k + j);
            }
    return DensityMatrix(std::move(r));
}

inline DensityMatrix apply_kraus(const DensityMatrix& rho,
                                 const std::vector<ComplexMatrix>& kraus) {
    const std::size_t d = rho.dim();
    ComplexMatrix completeness(d, d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw DimensionError("apply_kraus: operator shape mismatch");
        completeness = completeness + k.adjoint() * k;
    }
    if (completeness.max_abs_diff(ComplexMatrix::identity(d)) > 1e-10)
        throw KrausError("apply_kraus: completeness relation violated");
    ComplexMatrix out(d, d);
    for (const auto& k : kraus) out = out + k * rho.mat() * k.adjoint();
    return DensityMatrix(std::move(out));
}

// {cos(a/2)|0> + e^{ib} sin(a/2)|1>,  sin(a/2)|0> - e^{ib} cos(a/2)|1>}
inline OrthonormalBasis bloch_basis(const BlochAngles& angles) {
    const double ca = std::cos(angles.alpha / 2.0);
    const double sa = std::sin(angles.alpha / 2.0);
    const cplx ph = std::polar(1.0, angles.beta);
    std::vector<std::vector<cplx>> vs = {
        {cplx{ca, 0.0}, ph * sa},
        {cplx{sa, 0.0}, -ph * ca},
    };
    return OrthonormalBasis(std::move(vs));
}

// Product basis ordered |v1_i v2_j> with the row-major two-qubit convention.
inline OrthonormalBasis product_basis(const OrthonormalBasis& b1, const OrthonormalBasis& b2) {
    if (b1.dim() != 2 || b2.dim() != 2)
        throw DimensionError("product_basis: factors must be single-qubit bases");
    std::vector<std::vector<cplx>> vs;
    vs.reserve(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<cplx> v(4);
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) v[2 * k + l] = b1.vec(i)[k] * b2.vec(j)[l];
            vs.push_back(std::move(v));
        }
    return OrthonormalBasis(std::move(vs));
}

}  // namespace kdq

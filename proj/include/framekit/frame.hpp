#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/matrix.hpp"
#include "framekit/numerics.hpp"
#include "framekit/random.hpp"

namespace framekit {

/// Optimal two-sided energy bounds of a frame: A |x|^2 <= sum |<x,f_i>|^2 <= B |x|^2.
struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    double tight_ratio() const { return lower > 0.0 ? upper / lower : std::numeric_limits<double>::infinity(); }
};

/// A finite frame: M vectors in dimension N, stored as the columns of an
/// N x M synthesis matrix.  Immutable; the Gram matrix, the frame operator
/// and the optimal bounds are computed once at construction so certification
/// reports always reference frozen inputs.
template <typename Scalar>
class Frame {
public:
    static Frame from_columns(Matrix<Scalar> vectors, const Tolerances& tol = {}) {
        return Frame(std::move(vectors), tol);
    }

    std::size_t dim() const { return vectors_.rows(); }
    std::size_t count() const { return vectors_.cols(); }

    const Matrix<Scalar>& vectors() const { return vectors_; }
    const Matrix<Scalar>& gram() const { return gram_; }
    const Matrix<Scalar>& frame_operator() const { return frame_operator_; }
    const FrameBounds& bounds() const { return bounds_; }
    const Tolerances& tolerances() const { return tol_; }

    bool spans(double rank_tol) const { return bounds_.lower > rank_tol * bounds_.upper; }

    std::vector<double> column_norms() const {
        std::vector<double> norms(count());
        for (std::size_t j = 0; j < count(); ++j) norms[j] = norm<Scalar>(vectors_.col(j));
        return norms;
    }

private:
    Frame(Matrix<Scalar> vectors, const Tolerances& tol)
        : vectors_(std::move(vectors)), tol_(tol) {
        if (vectors_.cols() == 0) throw CountTooSmall("a frame needs at least one vector");
        if (vectors_.rows() == 0) throw DimensionMismatch("ambient dimension must be positive");
        if (!vectors_.is_finite()) throw NonFinite("frame vectors must be finite");
        gram_ = vectors_.adjoint() * vectors_;
        frame_operator_ = vectors_ * vectors_.adjoint();
        const auto eig = sym_eigen(frame_operator_, tol_);
        bounds_.upper = eig.eigenvalues.front();
        bounds_.lower = eig.eigenvalues.back();
    }

    Matrix<Scalar> vectors_;
    Tolerances tol_;
    Matrix<Scalar> gram_;
    Matrix<Scalar> frame_operator_;
    FrameBounds bounds_;
};

/// Analysis map x -> (<x, f_i>)_i.
template <typename Scalar>
std::vector<Scalar> analysis_apply(const Frame<Scalar>& f, std::type_identity_t<std::span<const Scalar>> x) {
    if (x.size() != f.dim())
        throw DimensionMismatch("analysis input length " + std::to_string(x.size()) +
                                " != dim " + std::to_string(f.dim()));
    std::vector<Scalar> coeffs(f.count());
    for (std::size_t i = 0; i < f.count(); ++i)
        coeffs[i] = dot<Scalar>(x, f.vectors().col(i));
    return coeffs;
}

/// Synthesis map (a_i) -> sum a_i f_i.
template <typename Scalar>
std::vector<Scalar> synthesis_apply(const Frame<Scalar>& f, std::type_identity_t<std::span<const Scalar>> coeffs) {
    return f.vectors().apply(coeffs);
}

/// S x = sum <x, f_i> f_i.
template <typename Scalar>
std::vector<Scalar> frame_operator_apply(const Frame<Scalar>& f, std::type_identity_t<std::span<const Scalar>> x) {
    if (x.size() != f.dim()) throw DimensionMismatch("frame operator input length mismatch");
    return f.frame_operator().apply(x);
}

template <typename Scalar>
FrameBounds frame_bounds(const Frame<Scalar>& f) {
    return f.bounds();
}

/// Rescales through the inverse square root of the frame operator; the result
/// has bounds (1,1) up to tolerance.
template <typename Scalar>
Frame<Scalar> canonical_parseval(const Frame<Scalar>& f) {
    const Tolerances& tol = f.tolerances();
    if (!f.spans(tol.rank))
        throw NotSpanning("canonical Parseval transform needs a spanning frame");
    Matrix<Scalar> root = spectral_power(f.frame_operator(), -0.5, tol.rank, tol);
    return Frame<Scalar>::from_columns(root * f.vectors(), tol);
}

/// x = S^{-1} sum a_i f_i; inverts the frame operator on its range.
template <typename Scalar>
std::vector<Scalar> reconstruct(const Frame<Scalar>& f, std::type_identity_t<std::span<const Scalar>> coeffs) {
    const Tolerances& tol = f.tolerances();
    if (!f.spans(tol.rank)) throw NotSpanning("reconstruction needs a spanning frame");
    if (coeffs.size() != f.count()) throw DimensionMismatch("coefficient length mismatch");
    const auto synthesized = synthesis_apply(f, coeffs);
    Matrix<Scalar> inverse = spectral_power(f.frame_operator(), -1.0, tol.rank, tol);
    return inverse.apply(synthesized);
}

/// Orthonormal-basis frame (identity columns).
template <typename Scalar>
Frame<Scalar> make_orthonormal_frame(std::size_t dim, const Tolerances& tol = {}) {
    return Frame<Scalar>::from_columns(Matrix<Scalar>::identity(dim), tol);
}

namespace detail {

inline Matrix<double> real_harmonic_columns(std::size_t dim, std::size_t count) {
    Matrix<double> v(dim, count);
    const double scale = std::sqrt(2.0 / static_cast<double>(dim));
    const std::size_t pairs = dim / 2;
    for (std::size_t m = 0; m < count; ++m) {
        std::size_t row = 0;
        if (dim % 2 == 1) v(row++, m) = scale / std::numbers::sqrt2;
        for (std::size_t k = 1; k <= pairs; ++k) {
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>(k * m) / static_cast<double>(count);
            v(row++, m) = scale * std::cos(angle);
            v(row++, m) = scale * std::sin(angle);
        }
    }
    return v;
}

inline Matrix<std::complex<double>> complex_harmonic_columns(std::size_t dim, std::size_t count) {
    Matrix<std::complex<double>> v(dim, count);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t m = 0; m < count; ++m)
        for (std::size_t k = 0; k < dim; ++k) {
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>(k * m) / static_cast<double>(count);
            v(k, m) = std::complex<double>(scale * std::cos(angle), scale * std::sin(angle));
        }
    return v;
}

} // namespace detail

/// Deterministic unit-norm tight frame with M >= N vectors: rows of the DFT
/// matrix in the complex field, paired cosine/sine rows (plus a rescaled
/// constant row when N is odd) in the real field.  The square case returns an
/// orthonormal basis.  Unit norms and tightness are verified, not assumed.
template <typename Scalar>
Frame<Scalar> make_harmonic_frame(std::size_t dim, std::size_t count, const Tolerances& tol = {}) {
    if (count < dim)
        throw CountTooSmall("harmonic frame needs count >= dim, got " + std::to_string(count) +
                            " < " + std::to_string(dim));
    Matrix<Scalar> columns;
    if (count == dim) {
        columns = Matrix<Scalar>::identity(dim);
    } else if constexpr (ScalarTraits<Scalar>::is_complex) {
        columns = detail::complex_harmonic_columns(dim, count);
    } else {
        columns = detail::real_harmonic_columns(dim, count);
    }
    Frame<Scalar> f = Frame<Scalar>::from_columns(std::move(columns), tol);

    const double target = static_cast<double>(count) / static_cast<double>(dim);
    const double slack = tol.slack() * target;
    if (std::abs(f.bounds().lower - target) > slack || std::abs(f.bounds().upper - target) > slack)
        throw NotTight("harmonic construction failed tightness check for dim=" +
                       std::to_string(dim) + " count=" + std::to_string(count));
    for (double nrm : f.column_norms())
        if (std::abs(nrm - 1.0) > tol.slack())
            throw NotUnitNorm("harmonic construction failed unit-norm check");
    return f;
}

/// Outcome payload carried by the convergence failure below.
template <typename Scalar>
class TighteningFailed : public DidNotConverge {
public:
    TighteningFailed(std::string what, Frame<Scalar> best)
        : DidNotConverge(std::move(what)), best_iterate(std::move(best)) {}
    Frame<Scalar> best_iterate;
};

/// Seeded random unit-norm tight frame by alternating column normalization
/// with spectral tightening V <- sqrt(M/N) S^{-1/2} V.  The post-condition
/// (unit norms and tight_ratio within `tight_tol`) is verified; on failure
/// the best iterate travels inside the exception.
template <typename Scalar>
Frame<Scalar> make_random_unit_tight_frame(std::size_t dim, std::size_t count, std::uint64_t seed,
                                           std::size_t max_iters = 0, double tight_tol = 1e-10,
                                           const Tolerances& tol = {}) {
    if (count < dim) throw CountTooSmall("tight frame needs count >= dim");
    if (max_iters == 0) max_iters = 10 * dim * count;

    Rng rng(seed);
    Matrix<Scalar> v = rng.gaussian_matrix<Scalar>(dim, count);
    const double ratio = static_cast<double>(count) / static_cast<double>(dim);

    auto residuals = [&](const Matrix<Scalar>& cols) {
        double worst_norm = 0.0;
        for (std::size_t j = 0; j < cols.cols(); ++j)
            worst_norm = std::max(worst_norm, std::abs(norm<Scalar>(cols.col(j)) - 1.0));
        const auto eig = sym_eigen(cols * cols.adjoint(), tol);
        const double tight = eig.eigenvalues.back() > 0.0
                                 ? eig.eigenvalues.front() / eig.eigenvalues.back() - 1.0
                                 : std::numeric_limits<double>::infinity();
        return std::pair<double, double>(worst_norm, tight);
    };

    for (std::size_t it = 0; it < max_iters; ++it) {
        for (std::size_t j = 0; j < count; ++j) {
            auto c = v.col(j);
            const double r = norm<Scalar>(std::span<const Scalar>(c.data(), c.size()));
            if (r > 0.0) scale_in_place<Scalar>(c, ScalarTraits<Scalar>::from_real(1.0 / r));
        }
        Matrix<Scalar> op = v * v.adjoint();
        Matrix<Scalar> root = spectral_power(op, -0.5, tol.rank, tol);
        v = (root * v).scaled(ScalarTraits<Scalar>::from_real(std::sqrt(ratio)));

        const auto [norm_res, tight_res] = residuals(v);
        if (norm_res < tight_tol && tight_res < tight_tol)
            return Frame<Scalar>::from_columns(std::move(v), tol);
    }
    Frame<Scalar> best = Frame<Scalar>::from_columns(std::move(v), tol);
    throw TighteningFailed<Scalar>(
        "tightening did not reach tolerance " + std::to_string(tight_tol) + " in " +
            std::to_string(max_iters) + " iterations",
        std::move(best));
}

} // namespace framekit

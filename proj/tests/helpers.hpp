#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <framekit/framekit.hpp>

namespace testkit {

using framekit::Frame;
using framekit::Matrix;
using framekit::Rng;

/// The Mercedes-Benz frame in R^2, committed as a hand-derived fixture:
/// columns (1,0), (-1/2, sqrt3/2), (-1/2, -sqrt3/2).
inline Frame<double> mercedes_benz() {
    const double r = std::sqrt(3.0) / 2.0;
    Matrix<double> columns(2, 3, {1.0, 0.0, -0.5, r, -0.5, -r});
    return Frame<double>::from_columns(std::move(columns));
}

/// Unit-norm columns of identity + delta * gaussian noise: a frame whose RIP
/// constant scales with delta.  Not tight; useful wherever a small epsilon
/// is needed.
inline Frame<double> perturbed_identity(std::size_t n, double delta, std::uint64_t seed) {
    Rng rng(seed);
    Matrix<double> v = Matrix<double>::identity(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v(i, j) += delta * rng.normal();
    for (std::size_t j = 0; j < n; ++j) {
        auto c = v.col(j);
        framekit::scale_in_place<double>(c, 1.0 / framekit::norm<double>(c));
    }
    return Frame<double>::from_columns(std::move(v));
}

/// Seeded Gaussian frame (spanning with probability one).
template <typename Scalar>
Frame<Scalar> random_frame(std::size_t dim, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    return Frame<Scalar>::from_columns(rng.gaussian_matrix<Scalar>(dim, count));
}

/// Random symmetric (Hermitian) matrix.
template <typename Scalar>
Matrix<Scalar> random_hermitian(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix<Scalar> a = rng.gaussian_matrix<Scalar>(n, n);
    return (a + a.adjoint()).scaled(framekit::ScalarTraits<Scalar>::from_real(0.5));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace testkit

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/matrix.hpp"
#include "framekit/scalar.hpp"

namespace framekit {

/// Eigendecomposition of a Hermitian matrix: A = Q diag(values) Q*.
/// Eigenvalues are real and sorted descending; eigenvector columns are
/// orthonormal within the tolerance the decomposition was run at.
template <typename Scalar>
struct SymmetricEigen {
    std::vector<double> eigenvalues;
    Matrix<Scalar> eigenvectors;

    Matrix<Scalar> reconstruct() const {
        const std::size_t n = eigenvalues.size();
        Matrix<Scalar> scaled = eigenvectors;
        for (std::size_t j = 0; j < n; ++j) {
            auto c = scaled.col(j);
            scale_in_place<Scalar>(c, ScalarTraits<Scalar>::from_real(eigenvalues[j]));
        }
        return scaled * eigenvectors.adjoint();
    }
};

namespace detail {

/// One cyclic-Jacobi pass target: annihilate entry (p,q) of the Hermitian
/// working matrix with the unitary plane rotation
///   G(p,p)=c, G(p,q)=s, G(q,p)=-conj(u)s, G(q,q)=conj(u)c,
/// where u is the phase of a(p,q).  Conjugating by the phase first reduces
/// the 2x2 block to the real symmetric case, so the angle formulas are the
/// classic ones and one code path serves both fields.
template <typename Scalar>
void jacobi_rotate(Matrix<Scalar>& a, Matrix<Scalar>& q, std::size_t p, std::size_t r) {
    using T = ScalarTraits<Scalar>;
    const Scalar apq = a(p, r);
    const double g = T::abs(apq);
    if (g == 0.0) return;
    const Scalar u = apq * T::from_real(1.0 / g);

    const double alpha = T::real(a(p, p));
    const double beta = T::real(a(r, r));
    const double tau = (beta - alpha) / (2.0 * g);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Scalar cs = T::from_real(c);
    const Scalar ss = T::from_real(s);
    const Scalar ucj = T::conj(u);
    const std::size_t n = a.rows();

    // A <- G* A G, applied as column then row updates
    for (std::size_t i = 0; i < n; ++i) {
        const Scalar aip = a(i, p);
        const Scalar air = a(i, r);
        a(i, p) = cs * aip - ucj * ss * air;
        a(i, r) = ss * aip + ucj * cs * air;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Scalar apj = a(p, j);
        const Scalar arj = a(r, j);
        a(p, j) = cs * apj - u * ss * arj;
        a(r, j) = ss * apj + u * cs * arj;
    }
    a(p, r) = Scalar{};
    a(r, p) = Scalar{};

    for (std::size_t i = 0; i < q.rows(); ++i) {
        const Scalar qip = q(i, p);
        const Scalar qir = q(i, r);
        q(i, p) = cs * qip - ucj * ss * qir;
        q(i, r) = ss * qip + ucj * cs * qir;
    }
}

template <typename Scalar>
double off_diagonal_norm(const Matrix<Scalar>& a) {
    double s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != j) {
                const double v = ScalarTraits<Scalar>::abs(a(i, j));
                s += v * v;
            }
    return std::sqrt(s);
}

} // namespace detail

/// Eigendecomposition of a symmetric (Hermitian) matrix by cyclic Jacobi
/// sweeps.  Accurate at the dimensions this library targets and free of
/// external dependencies; the input is symmetrized once so only genuine
/// asymmetry beyond tol.sym is rejected.
template <typename Scalar>
SymmetricEigen<Scalar> sym_eigen(const Matrix<Scalar>& a, const Tolerances& tol = {}) {
    if (a.rows() != a.cols())
        throw NotSquare("sym_eigen needs a square matrix, got " + a.shape_string());
    const std::size_t n = a.rows();
    if (n == 0) return {{}, Matrix<Scalar>()};

    const double scale = a.frobenius_norm();
    const double asym = (a - a.adjoint()).frobenius_norm();
    if (asym > tol.sym * std::max(scale, 1e-300) && asym > 0.0)
        throw NotSymmetric("matrix is not Hermitian: residual " + std::to_string(asym));

    Matrix<Scalar> work = (a + a.adjoint()).scaled(ScalarTraits<Scalar>::from_real(0.5));
    Matrix<Scalar> q = Matrix<Scalar>::identity(n);

    const double target = tol.eigen * std::max(scale, 1e-300);
    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(work) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t r = p + 1; r < n; ++r) detail::jacobi_rotate(work, q, p, r);
    }
    if (sweep == max_sweeps && detail::off_diagonal_norm(work) > target)
        throw DidNotConverge("jacobi sweeps exhausted at n=" + std::to_string(n));

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = ScalarTraits<Scalar>::real(work(i, i));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });

    SymmetricEigen<Scalar> out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix<Scalar>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = values[order[k]];
        out.eigenvectors.set_col(k, q.col(order[k]));
    }
    return out;
}

/// Thin singular value decomposition a = U diag(s) V*, built on sym_eigen of
/// the smaller Gram matrix.  Singular values are non-negative descending;
/// columns paired with vanishing singular values are completed to an
/// orthonormal set so the factorization always reconstructs.
template <typename Scalar>
struct Svd {
    Matrix<Scalar> left;
    std::vector<double> singulars;
    Matrix<Scalar> right;
};

namespace detail {

// Orthonormal completion of partially-filled columns [filled, k): project
// coordinate seeds against everything accepted so far, twice, keep the
// largest survivor.
template <typename Scalar>
void complete_columns(Matrix<Scalar>& m, std::size_t filled) {
    const std::size_t n = m.rows();
    for (std::size_t j = filled; j < m.cols(); ++j) {
        std::vector<Scalar> best;
        double best_norm = -1.0;
        for (std::size_t seed = 0; seed < n; ++seed) {
            std::vector<Scalar> v(n, Scalar{});
            v[seed] = ScalarTraits<Scalar>::from_real(1.0);
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    const Scalar c = dot<Scalar>(v, m.col(k));
                    v = axpy<Scalar>(-c, m.col(k), v);
                }
            const double r = norm<Scalar>(v);
            if (r > best_norm) {
                best_norm = r;
                best = std::move(v);
            }
            if (best_norm > 0.5) break;  // good enough, seeds are exhaustive anyway
        }
        scale_in_place<Scalar>(best, ScalarTraits<Scalar>::from_real(1.0 / best_norm));
        m.set_col(j, best);
    }
}

} // namespace detail

template <typename Scalar>
Svd<Scalar> svd(const Matrix<Scalar>& a, const Tolerances& tol = {}) {
    if (!a.is_finite()) throw NonFinite("svd input has non-finite entries");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = std::min(m, n);
    Svd<Scalar> out;
    out.singulars.assign(k, 0.0);
    if (k == 0) {
        out.left = Matrix<Scalar>(m, 0);
        out.right = Matrix<Scalar>(n, 0);
        return out;
    }

    const bool tall = m >= n;
    const Matrix<Scalar> gram = tall ? a.adjoint() * a : a * a.adjoint();
    const SymmetricEigen<Scalar> eig = sym_eigen(gram, tol);

    Matrix<Scalar> small = eig.eigenvectors;  // n x n (tall) or m x m (wide)
    Matrix<Scalar> big(tall ? m : n, k);
    const double lead = std::max(eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front(), 0.0);
    const double cutoff = std::sqrt(std::max(lead, 0.0)) * tol.rank;

    std::size_t filled = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double sv = std::sqrt(std::max(eig.eigenvalues[j], 0.0));
        out.singulars[j] = sv;
        if (sv > cutoff && sv > 0.0) {
            const Matrix<Scalar>& factor = tall ? a : a.adjoint();
            auto v = factor.apply(small.col(j));
            scale_in_place<Scalar>(v, ScalarTraits<Scalar>::from_real(1.0 / sv));
            big.set_col(j, v);
            filled = j + 1;
        }
    }
    detail::complete_columns(big, filled);

    if (tall) {
        out.left = std::move(big);
        out.right = std::move(small);
    } else {
        out.left = std::move(small);
        out.right = std::move(big);
    }
    // trim the square factor to the thin shape
    if (out.right.cols() > k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        out.right = out.right.select_cols(idx);
    }
    if (out.left.cols() > k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        out.left = out.left.select_cols(idx);
    }
    return out;
}

/// Q f(L) Q* for a PSD matrix, with f(l) = l^exponent applied to the retained
/// spectrum.  Negative exponents act on the range only: eigenvalues at or
/// below rank_tol * lambda_max map to zero (pseudo-power).  Eigenvalues below
/// -tol.sym * lambda_max are rejected.
template <typename Scalar>
Matrix<Scalar> spectral_power(const Matrix<Scalar>& a, double exponent, double rank_tol,
                              const Tolerances& tol = {}) {
    SymmetricEigen<Scalar> eig = sym_eigen(a, tol);
    const double lead = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
    const double negative_floor = -tol.sym * std::max(lead, 1e-300);
    const double zero_cut = rank_tol * lead;

    const std::size_t n = eig.eigenvalues.size();
    Matrix<Scalar> scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        double lambda = eig.eigenvalues[j];
        if (lambda < negative_floor)
            throw NegativeEigenvalue("eigenvalue " + std::to_string(lambda) +
                                     " below PSD tolerance");
        const double f =
            (lambda <= zero_cut || lambda <= 0.0) ? 0.0 : std::pow(lambda, exponent);
        auto c = scaled.col(j);
        scale_in_place<Scalar>(c, ScalarTraits<Scalar>::from_real(f));
    }
    Matrix<Scalar> result = scaled * eig.eigenvectors.adjoint();
    // symmetrize away roundoff drift
    return (result + result.adjoint()).scaled(ScalarTraits<Scalar>::from_real(0.5));
}

} // namespace framekit

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame.hpp"
#include "framekit/fusion.hpp"
#include "framekit/partition.hpp"
#include "framekit/riesz.hpp"

namespace framekit {

/// Whiten one block: push its vectors through the inverse square root of the
/// block frame operator (taken on the block's span).  The result is an
/// orthonormal basis of the same span.
template <typename Scalar>
Matrix<Scalar> whiten_block(const Frame<Scalar>& f, const std::vector<std::size_t>& block) {
    const Tolerances& tol = f.tolerances();
    const Matrix<Scalar> columns = f.vectors().select_cols(block);
    const auto decomposition = svd(columns, tol);
    const double lead = decomposition.singulars.empty() ? 0.0 : decomposition.singulars.front();
    for (double s : decomposition.singulars)
        if (s <= tol.rank * std::max(lead, 1e-300))
            throw DependentBlock("block is linearly dependent; whitening is undefined");

    const Matrix<Scalar> block_operator = columns * columns.adjoint();
    const Matrix<Scalar> inv_root = spectral_power(block_operator, -0.5, tol.rank, tol);
    Matrix<Scalar> whitened = inv_root * columns;

    const Matrix<Scalar> gram = whitened.adjoint() * whitened;
    const Matrix<Scalar> eye = Matrix<Scalar>::identity(block.size());
    if ((gram - eye).frobenius_norm() > tol.slack() * std::sqrt(static_cast<double>(block.size())))
        throw DidNotConverge("whitened block failed its orthonormality check");
    return whitened;
}

/// A frame after whitening some of its partition blocks.
template <typename Scalar>
struct ReplacedFrame {
    Frame<Scalar> frame;
    Partition partition;
    std::vector<std::size_t> replaced_blocks;  ///< block ids, sorted
};

/// Replace the named blocks by their whitened versions; all other vectors are
/// carried over unchanged.  Which blocks are named is free: replacement
/// commutes with block relabeling.
template <typename Scalar>
ReplacedFrame<Scalar> replace_blocks(const Frame<Scalar>& f, const Partition& partition,
                                     std::vector<std::size_t> block_ids) {
    if (partition.count() != f.count())
        throw InvalidPartition("partition does not match the frame");
    std::sort(block_ids.begin(), block_ids.end());
    if (std::adjacent_find(block_ids.begin(), block_ids.end()) != block_ids.end())
        throw UnknownBlock("a block id is repeated");
    for (std::size_t id : block_ids)
        if (id >= partition.block_count())
            throw UnknownBlock("block id " + std::to_string(id) + " out of range " +
                               std::to_string(partition.block_count()));

    Matrix<Scalar> vectors = f.vectors();
    for (std::size_t id : block_ids) {
        const auto& block = partition.block(id);
        const Matrix<Scalar> whitened = whiten_block(f, block);
        for (std::size_t k = 0; k < block.size(); ++k)
            vectors.set_col(block[k], whitened.col(k));
    }
    return ReplacedFrame<Scalar>{Frame<Scalar>::from_columns(std::move(vectors), f.tolerances()),
                                 partition, std::move(block_ids)};
}

/// Largest number of blocks that may be whitened while the replacement
/// bracket stays positive:
///   K1 < (1/(16 eps^2)) (1 - 4 eps/(1-eps)^2)^2 / (1+eps)^6.
inline std::size_t max_replaceable_blocks(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw EpsilonOutOfRange("epsilon must lie in (0,1), got " + std::to_string(epsilon));
    const double hypothesis = 1.0 - 4.0 * epsilon / ((1.0 - epsilon) * (1.0 - epsilon));
    if (!(hypothesis > 0.0))
        throw FormulaNegative("1 - 4 eps/(1-eps)^2 <= 0 at epsilon " + std::to_string(epsilon));
    const double one_plus = 1.0 + epsilon;
    const double bound = (1.0 / (16.0 * epsilon * epsilon)) * hypothesis * hypothesis /
                         (one_plus * one_plus * one_plus * one_plus * one_plus * one_plus);
    // effectively unbounded once the budget passes any usable block count
    if (bound > 1e15) return static_cast<std::size_t>(1e15);
    // largest integer strictly below the bound
    const double floored = std::floor(bound);
    if (floored == bound) return static_cast<std::size_t>(floored) - 1;
    return static_cast<std::size_t>(floored);
}

/// Certified post-replacement subset-norm bracket.  The theorem bounds
/// |sum a_i psi_i| against (sum |a_i|^2)^{1/2}, so the measured extremes are
/// square roots of subset-Gram eigenvalue extremes.
struct ReplacementReport {
    std::size_t replaced_count = 0;
    double epsilon = 0.0;             ///< RIP constant of the ORIGINAL frame
    double theoretical_lower = 0.0;   ///< (1-4e/(1-e)^2)/(1+e)^2 - 4e(1+e)sqrt(K1)
    double theoretical_upper = 0.0;   ///< (1+e)^{3/2} + 4e(1+e)sqrt(K1)
    double measured_lower = 0.0;      ///< min over size-s subsets of sqrt(lambda_min)
    double measured_upper = 0.0;      ///< max over size-s subsets of sqrt(lambda_max)
    std::optional<std::size_t> max_replaceable;  ///< empty when the closing formula does not apply
    bool bracket_vacuous = false;     ///< theoretical_lower <= 0; nothing to certify
    std::optional<bool> holds;        ///< empty when the bracket is vacuous
    std::size_t subsets_checked = 0;
};

/// Sweep every size-s subset of the replaced family and compare the norm
/// extremes against the theorem bracket built from the ORIGINAL frame's RIP
/// constant (re-measuring after replacement would change the hypothesis).
template <typename Scalar>
ReplacementReport certify_replacement(const ReplacedFrame<Scalar>& rf, std::size_t s,
                                      const RipReport& rip_before, const SweepOptions& opts = {}) {
    if (rip_before.s < s)
        throw IndexOutOfRange("rip certificate covers subsets up to " +
                              std::to_string(rip_before.s) + ", sweep wants " + std::to_string(s));
    const double eps = rip_before.epsilon_hat;
    if (!(eps < 1.0))
        throw EpsilonTooLarge("replacement bracket needs epsilon < 1, got " + std::to_string(eps));

    ReplacementReport report;
    report.replaced_count = rf.replaced_blocks.size();
    report.epsilon = eps;

    const double k1 = static_cast<double>(rf.replaced_blocks.size());
    const double one_plus = 1.0 + eps;
    const double one_minus = 1.0 - eps;
    const double cross_term = 4.0 * eps * one_plus * std::sqrt(k1);
    report.theoretical_lower =
        (1.0 - 4.0 * eps / (one_minus * one_minus)) / (one_plus * one_plus) - cross_term;
    report.theoretical_upper = std::pow(one_plus, 1.5) + cross_term;

    try {
        report.max_replaceable = max_replaceable_blocks(eps);
    } catch (const Error&) {
        // eps == 0 or the formula hypothesis failed; the field stays empty
    }

    const std::size_t cap = std::min(s, rf.frame.count());
    const std::uint64_t total = detail::binomial_capped(rf.frame.count(), cap, opts.budget + 1);
    if (total > opts.budget)
        throw BudgetExceeded("replacement sweep exceeds the enumeration budget");

    const Tolerances& tol = rf.frame.tolerances();
    double lambda_min = std::numeric_limits<double>::infinity();
    double lambda_max = 0.0;
    std::vector<std::size_t> subset = detail::colex_unrank(0, rf.frame.count(), cap);
    for (std::uint64_t r = 0; r < total; ++r) {
        if (r != 0) {
            std::size_t i = 0;
            while (i + 1 < cap && subset[i] + 1 == subset[i + 1]) {
                subset[i] = i;
                ++i;
            }
            ++subset[i];
        }
        const auto eig = sym_eigen(detail::subset_gram(rf.frame, subset), tol);
        lambda_max = std::max(lambda_max, eig.eigenvalues.front());
        lambda_min = std::min(lambda_min, eig.eigenvalues.back());
    }
    report.measured_lower = std::sqrt(std::max(lambda_min, 0.0));
    report.measured_upper = std::sqrt(lambda_max);
    report.subsets_checked = total;

    if (report.theoretical_lower <= 0.0) {
        report.bracket_vacuous = true;
    } else {
        const double slack = tol.slack() * std::max(1.0, report.theoretical_upper);
        report.holds = report.measured_lower >= report.theoretical_lower - slack &&
                       report.measured_upper <= report.theoretical_upper + slack;
    }
    return report;
}

/// Residual of projecting the image space of a near-identity map back onto
/// its source: if T maps w1 onto w2 with |x - Tx|^2 <= eps |x|^2 on w1, then
/// every unit y in w2 satisfies |y - P1 y|^2 <= 4 eps/(1-eps)^2.
struct ProjectionResidualReport {
    double epsilon = 0.0;            ///< hypothesis constant the bound uses
    double epsilon_measured = 0.0;   ///< largest measured |x-Tx|^2/|x|^2 on w1
    double worst_residual_sq = 0.0;  ///< exact extremal |y-P1 y|^2/|y|^2 over w2
    double bound = 0.0;              ///< 4 eps/(1-eps)^2
    bool holds = false;
};

template <typename Scalar>
ProjectionResidualReport check_projection_residual_bound(const Subspace<Scalar>& w1,
                                                         const Subspace<Scalar>& w2,
                                                         const Matrix<Scalar>& t, double epsilon,
                                                         std::size_t trials = 0,
                                                         std::uint64_t seed = 0,
                                                         const Tolerances& tol = {}) {
    if (w1.ambient_dim() != w2.ambient_dim() || t.rows() != w1.ambient_dim() ||
        t.cols() != w1.ambient_dim())
        throw DimensionMismatch("map and subspaces must share the ambient space");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw EpsilonOutOfRange("residual bound needs a hypothesis constant in [0,1)");

    const Matrix<Scalar> mapped = t * w1.basis();

    // surjectivity of T onto w2: the image must lie in w2 and fill it
    const Matrix<Scalar> image_coords = w2.basis().adjoint() * mapped;
    const Matrix<Scalar> lifted = w2.basis() * image_coords;
    if ((lifted - mapped).frobenius_norm() > tol.slack() * std::max(mapped.frobenius_norm(), 1.0))
        throw HypothesisViolated("T(w1) is not contained in w2");
    {
        const auto eig = sym_eigen(image_coords * image_coords.adjoint(), tol);
        if (eig.eigenvalues.back() <= tol.rank * std::max(eig.eigenvalues.front(), 1.0))
            throw HypothesisViolated("T does not map w1 onto w2");
    }

    // hypothesis |x - Tx|^2 <= eps |x|^2 on w1, as a quadratic form
    const Matrix<Scalar> defect = w1.basis() - mapped;
    const auto defect_eig = sym_eigen(defect.adjoint() * defect, tol);
    ProjectionResidualReport report;
    report.epsilon = epsilon;
    report.epsilon_measured = std::max(defect_eig.eigenvalues.front(), 0.0);
    if (report.epsilon_measured > epsilon + tol.slack() * (1.0 + epsilon))
        throw HypothesisViolated("measured map defect " + std::to_string(report.epsilon_measured) +
                                 " exceeds the hypothesis " + std::to_string(epsilon));

    // exact extremal residual: largest eigenvalue of B2*(I - P1)B2,
    // symmetrized against roundoff before the eigensolve
    const Matrix<Scalar> p1 = w1.projection_matrix();
    const Matrix<Scalar> eye = Matrix<Scalar>::identity(w1.ambient_dim());
    Matrix<Scalar> residual_form = w2.basis().adjoint() * ((eye - p1) * w2.basis());
    residual_form = (residual_form + residual_form.adjoint())
                        .scaled(ScalarTraits<Scalar>::from_real(0.5));
    const auto residual_eig = sym_eigen(residual_form, tol);
    report.worst_residual_sq = std::max(residual_eig.eigenvalues.front(), 0.0);

    // random probes cannot beat the extremal; they exercise the same bound
    if (trials > 0) {
        Rng rng(seed);
        for (std::size_t k = 0; k < trials; ++k) {
            const auto coords = rng.unit_vector<Scalar>(w2.dim());
            const auto y = w2.basis().apply(coords);
            const auto py = p1.apply(y);
            const double r = distance<Scalar>(y, py);
            report.worst_residual_sq = std::max(report.worst_residual_sq, r * r);
        }
    }

    report.bound = 4.0 * epsilon / ((1.0 - epsilon) * (1.0 - epsilon));
    report.holds = report.worst_residual_sq <= report.bound + tol.slack() * (1.0 + report.bound);
    return report;
}

} // namespace framekit

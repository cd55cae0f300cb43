#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame.hpp"
#include "framekit/partition.hpp"
#include "framekit/random.hpp"
#include "framekit/riesz.hpp"

namespace framekit {

/// A subspace of the ambient space, held as an orthonormal basis.  Bases are
/// produced by pivoted Gram-Schmidt with one reorthogonalization pass;
/// storing the basis instead of the projection matrix keeps angle
/// computations stable and storage at O(N k).
template <typename Scalar>
class Subspace {
public:
    /// Orthonormalizes the given spanning columns.  Columns whose residual
    /// falls at or below rank_tol times the largest singular value are
    /// dropped; `degraded()` reports whether that happened.
    static Subspace from_spanning(const Matrix<Scalar>& spanning, const Tolerances& tol = {}) {
        if (spanning.cols() == 0 || spanning.rows() == 0)
            throw DimensionMismatch("a subspace needs at least one spanning vector");

        const auto decomposition = svd(spanning, tol);
        const double lead = decomposition.singulars.empty() ? 0.0 : decomposition.singulars.front();
        const double cut = tol.rank * std::max(lead, 1e-300);

        const std::size_t n = spanning.rows();
        std::vector<std::vector<Scalar>> accepted;
        std::vector<std::size_t> remaining(spanning.cols());
        std::iota(remaining.begin(), remaining.end(), std::size_t{0});
        std::vector<std::vector<Scalar>> work;
        for (std::size_t j = 0; j < spanning.cols(); ++j) work.push_back(spanning.col_vector(j));

        while (!remaining.empty()) {
            // pivot on the largest residual norm
            std::size_t pick = 0;
            double best = -1.0;
            for (std::size_t k = 0; k < remaining.size(); ++k) {
                const double r = norm<Scalar>(work[remaining[k]]);
                if (r > best) {
                    best = r;
                    pick = k;
                }
            }
            if (best <= cut) break;
            std::vector<Scalar> v = work[remaining[pick]];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : accepted) {
                    const Scalar c = dot<Scalar>(v, q);
                    v = axpy<Scalar>(-c, q, v);
                }
            const double r = norm<Scalar>(v);
            if (r > cut) {
                scale_in_place<Scalar>(v, ScalarTraits<Scalar>::from_real(1.0 / r));
                accepted.push_back(std::move(v));
            }
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
            for (std::size_t idx : remaining) {
                auto& w = work[idx];
                const Scalar c = dot<Scalar>(w, accepted.back());
                w = axpy<Scalar>(-c, accepted.back(), w);
            }
        }
        if (accepted.empty()) throw DependentBlock("spanning set is numerically zero");

        Matrix<Scalar> basis(n, accepted.size());
        for (std::size_t j = 0; j < accepted.size(); ++j) basis.set_col(j, accepted[j]);
        Subspace s;
        s.basis_ = std::move(basis);
        s.degraded_ = accepted.size() < spanning.cols();
        return s;
    }

    static Subspace from_orthonormal(Matrix<Scalar> basis, const Tolerances& tol = {}) {
        const Matrix<Scalar> gram = basis.adjoint() * basis;
        const Matrix<Scalar> eye = Matrix<Scalar>::identity(basis.cols());
        if ((gram - eye).frobenius_norm() > tol.slack() * std::sqrt(static_cast<double>(basis.cols())))
            return from_spanning(basis, tol);
        Subspace s;
        s.basis_ = std::move(basis);
        return s;
    }

    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix<Scalar>& basis() const { return basis_; }
    bool degraded() const { return degraded_; }

    const std::vector<std::size_t>& source_indices() const { return source_indices_; }
    void set_source_indices(std::vector<std::size_t> idx) { source_indices_ = std::move(idx); }

    Matrix<Scalar> projection_matrix() const { return basis_ * basis_.adjoint(); }

private:
    Matrix<Scalar> basis_;
    std::vector<std::size_t> source_indices_;
    bool degraded_ = false;
};

/// Orthogonal projection of x onto the subspace.
template <typename Scalar>
std::vector<Scalar> project(const Subspace<Scalar>& sub, std::type_identity_t<std::span<const Scalar>> x) {
    if (x.size() != sub.ambient_dim())
        throw DimensionMismatch("projection input length " + std::to_string(x.size()) +
                                " != ambient " + std::to_string(sub.ambient_dim()));
    const auto coords = sub.basis().adjoint().apply(x);
    return sub.basis().apply(coords);
}

/// Weighted family of subspaces with its fusion operator S_W = sum v_i^2 P_i
/// and the operator's extreme eigenvalues as bounds.
template <typename Scalar>
class FusionFrame {
public:
    FusionFrame(std::vector<Subspace<Scalar>> subspaces, std::vector<double> weights,
                const Tolerances& tol = {})
        : subspaces_(std::move(subspaces)), weights_(std::move(weights)), tol_(tol) {
        if (subspaces_.empty()) throw TooFewSubspaces("a fusion frame needs subspaces");
        if (weights_.empty()) weights_.assign(subspaces_.size(), 1.0);
        if (weights_.size() != subspaces_.size())
            throw DimensionMismatch("one weight per subspace required");
        const std::size_t n = subspaces_.front().ambient_dim();
        for (const auto& s : subspaces_)
            if (s.ambient_dim() != n) throw AmbientMismatch("mixed ambient dimensions");
        for (double w : weights_)
            if (!(w > 0.0)) throw InvalidPartition("fusion weights must be positive");

        operator_ = Matrix<Scalar>::zero(n, n);
        for (std::size_t i = 0; i < subspaces_.size(); ++i) {
            const double w2 = weights_[i] * weights_[i];
            operator_ = operator_ + subspaces_[i].projection_matrix().scaled(
                                        ScalarTraits<Scalar>::from_real(w2));
        }
        const auto eig = sym_eigen(operator_, tol_);
        upper_ = eig.eigenvalues.front();
        lower_ = eig.eigenvalues.back();
    }

    std::size_t ambient_dim() const { return subspaces_.front().ambient_dim(); }
    std::size_t size() const { return subspaces_.size(); }
    const std::vector<Subspace<Scalar>>& subspaces() const { return subspaces_; }
    const std::vector<double>& weights() const { return weights_; }
    const Matrix<Scalar>& fusion_operator() const { return operator_; }
    const Tolerances& tolerances() const { return tol_; }

    double lower_bound() const { return lower_; }
    double upper_bound() const { return upper_; }
    bool spans(double rank_tol) const { return lower_ > rank_tol * std::max(upper_, 1.0); }

private:
    std::vector<Subspace<Scalar>> subspaces_;
    std::vector<double> weights_;
    Tolerances tol_;
    Matrix<Scalar> operator_;
    double lower_ = 0.0;
    double upper_ = 0.0;
};

/// Spans of the partition blocks as a unit-weight fusion frame.  Dependent
/// blocks still contribute their true span; the subspace is flagged.
template <typename Scalar>
FusionFrame<Scalar> fusion_frame_from_partition(const Frame<Scalar>& f, const Partition& partition,
                                                std::vector<double> weights = {}) {
    if (partition.count() != f.count())
        throw InvalidPartition("partition covers " + std::to_string(partition.count()) +
                               " indices, frame has " + std::to_string(f.count()));
    std::vector<Subspace<Scalar>> subspaces;
    for (std::size_t j = 0; j < partition.block_count(); ++j) {
        const auto& block = partition.block(j);
        Matrix<Scalar> columns = f.vectors().select_cols(block);
        auto sub = Subspace<Scalar>::from_spanning(columns, f.tolerances());
        sub.set_source_indices(block);
        subspaces.push_back(std::move(sub));
    }
    return FusionFrame<Scalar>(std::move(subspaces), std::move(weights), f.tolerances());
}

template <typename Scalar>
std::pair<double, double> fusion_bounds(const FusionFrame<Scalar>& ff) {
    return {ff.lower_bound(), ff.upper_bound()};
}

/// Fusion measurements of x: the list (v_i P_i x)_i.
template <typename Scalar>
std::vector<std::vector<Scalar>> fusion_measure(const FusionFrame<Scalar>& ff,
                                                std::type_identity_t<std::span<const Scalar>> x) {
    std::vector<std::vector<Scalar>> out;
    out.reserve(ff.size());
    for (std::size_t i = 0; i < ff.size(); ++i) {
        auto p = project(ff.subspaces()[i], x);
        scale_in_place<Scalar>(p, ScalarTraits<Scalar>::from_real(ff.weights()[i]));
        out.push_back(std::move(p));
    }
    return out;
}

/// x = S_W^{-1} sum v_i m_i for measurements m_i = v_i P_i x.  Every
/// measurement must lie in its subspace.
template <typename Scalar>
std::vector<Scalar> fusion_reconstruct(const FusionFrame<Scalar>& ff,
                                       const std::vector<std::vector<Scalar>>& measurements) {
    const Tolerances& tol = ff.tolerances();
    if (!ff.spans(tol.rank)) throw NotAFusionFrame("fusion operator is singular");
    if (measurements.size() != ff.size())
        throw DimensionMismatch("one measurement per subspace required");

    std::vector<Scalar> stacked(ff.ambient_dim(), Scalar{});
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const auto& m = measurements[i];
        if (m.size() != ff.ambient_dim()) throw DimensionMismatch("measurement length mismatch");
        const auto back = project(ff.subspaces()[i], m);
        const double deviation = distance<Scalar>(back, m);
        if (deviation > tol.slack() * std::max(norm<Scalar>(m), 1.0))
            throw MeasurementOutsideSubspace("measurement " + std::to_string(i) +
                                             " is not in its subspace");
        for (std::size_t r = 0; r < stacked.size(); ++r)
            stacked[r] += ScalarTraits<Scalar>::from_real(ff.weights()[i]) * m[r];
    }
    const Matrix<Scalar> inverse = spectral_power(ff.fusion_operator(), -1.0, tol.rank, tol);
    return inverse.apply(stacked);
}

/// Certified near-tightness finding: a unit-norm tight frame whose size-s
/// subsets have Riesz constant eps yields, for any partition into blocks of
/// size at most s, a unit-weight fusion frame with bounds inside
/// [M/((1+eps)N), M(1+eps)/N].
struct NearTightnessReport {
    double epsilon = 0.0;
    bool epsilon_in_hypothesis = true;  ///< the bracket presumes eps < 1
    double theoretical_lower = 0.0;
    double theoretical_upper = 0.0;
    double measured_lower = 0.0;
    double measured_upper = 0.0;
    bool holds = false;
    bool nearly_tight = false;  ///< exists C with A >= C/(1+eps) and B <= C(1+eps)
    double nearly_tight_c = 0.0;
};

template <typename Scalar>
NearTightnessReport certify_near_tightness(const Frame<Scalar>& f, const Partition& partition,
                                           const RipReport& rip) {
    const Tolerances& tol = f.tolerances();
    const double ratio = f.bounds().tight_ratio();
    if (!(ratio <= 1.0 + tol.tight))
        throw NotTight("frame tight_ratio " + std::to_string(ratio) + " exceeds tolerance");
    for (double nrm : f.column_norms())
        if (std::abs(nrm - 1.0) > tol.tight)
            throw NotUnitNorm("frame is not unit-norm within tolerance");
    if (partition.max_block_size() > rip.s)
        throw BlockTooLarge("partition block of size " + std::to_string(partition.max_block_size()) +
                            " exceeds the certified subset cap " + std::to_string(rip.s));

    const double eps = rip.epsilon_hat;
    const double m = static_cast<double>(f.count());
    const double n = static_cast<double>(f.dim());

    NearTightnessReport report;
    report.epsilon = eps;
    report.epsilon_in_hypothesis = eps < 1.0;
    report.theoretical_lower = m / ((1.0 + eps) * n);
    report.theoretical_upper = m * (1.0 + eps) / n;

    const auto ff = fusion_frame_from_partition(f, partition);
    report.measured_lower = ff.lower_bound();
    report.measured_upper = ff.upper_bound();

    const double slack = tol.slack() * std::max(report.theoretical_upper, 1.0);
    report.holds = report.measured_lower >= report.theoretical_lower - slack &&
                   report.measured_upper <= report.theoretical_upper + slack;

    if (report.measured_lower > 0.0) {
        const double spread = report.measured_upper / report.measured_lower;
        report.nearly_tight = spread <= (1.0 + eps) * (1.0 + eps) + slack;
        report.nearly_tight_c = std::sqrt(report.measured_upper * report.measured_lower);
    }
    return report;
}

/// Observed extremes of |P x|^2 relative to the analysis energy
/// sum_{i in block} |<x, f_i>|^2 over random unit probes.
struct ProjectionEnergyReport {
    double epsilon = 0.0;
    double ratio_low = 1.0;
    double ratio_high = 1.0;
    std::size_t informative_trials = 0;
    bool holds = false;
};

/// For a block whose Riesz constant is at most eps, the block-span projection
/// energy |P x|^2 is bracketed by analysis energy within factors
/// 1/(1+eps) and (1+eps); probes orthogonal to the span satisfy it
/// degenerately and are excluded from the ratio extremes.
template <typename Scalar>
ProjectionEnergyReport check_projection_energy_bounds(const Frame<Scalar>& f,
                                                      const std::vector<std::size_t>& block,
                                                      double epsilon, std::size_t trials,
                                                      std::uint64_t seed) {
    const Tolerances& tol = f.tolerances();
    const RieszBounds rb = riesz_bounds(f, block);
    if (!(rb.epsilon <= epsilon + tol.slack() * (1.0 + epsilon)))
        throw NotRieszBasis("block epsilon " + std::to_string(rb.epsilon) +
                            " exceeds the supplied " + std::to_string(epsilon));

    const auto sub =
        Subspace<Scalar>::from_spanning(f.vectors().select_cols(block), tol);

    ProjectionEnergyReport report;
    report.epsilon = epsilon;
    report.ratio_low = std::numeric_limits<double>::infinity();
    report.ratio_high = -std::numeric_limits<double>::infinity();

    Rng rng(seed);
    bool ok = true;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto x = rng.unit_vector<Scalar>(f.dim());
        double analysis_energy = 0.0;
        for (std::size_t i : block) {
            const double c = ScalarTraits<Scalar>::abs(dot<Scalar>(x, f.vectors().col(i)));
            analysis_energy += c * c;
        }
        const auto p = project(sub, x);
        const double pn = norm<Scalar>(p);
        const double projection_energy = pn * pn;

        const double slack = tol.slack() * std::max(1.0, analysis_energy);
        ok = ok && projection_energy <= (1.0 + epsilon) * analysis_energy + slack &&
             projection_energy >= analysis_energy / (1.0 + epsilon) - slack;
        if (analysis_energy > tol.slack()) {
            const double ratio = projection_energy / analysis_energy;
            report.ratio_low = std::min(report.ratio_low, ratio);
            report.ratio_high = std::max(report.ratio_high, ratio);
            ++report.informative_trials;
        }
    }
    if (report.informative_trials == 0) {
        report.ratio_low = report.ratio_high = 1.0;
    }
    report.holds = ok;
    return report;
}

/// Composition of local frames with the global fusion structure.
struct CompositionReport {
    double local_lower = 0.0;   ///< inf of the per-subspace lower bounds
    double local_upper = 0.0;   ///< sup of the per-subspace upper bounds
    double fusion_lower = 0.0;
    double fusion_upper = 0.0;
    double composed_lower = 0.0;
    double composed_upper = 0.0;
    bool forward_holds = false;  ///< composed bounds inside [A C, B D]
    bool reverse_holds = false;  ///< fusion bounds inside [C'/B, D'/A]
};

/// Local families, one per subspace and each spanning its subspace, compose
/// with the fusion weights into a global frame whose bounds land in
/// [A C, B D]; conversely the fusion bounds land in [C'/B, D'/A] where
/// (C', D') are the composed frame's bounds.
template <typename Scalar>
CompositionReport check_local_global_composition(
    const FusionFrame<Scalar>& ff, const std::vector<Matrix<Scalar>>& local_frames) {
    if (local_frames.size() != ff.size())
        throw DimensionMismatch("one local family per subspace required");
    const Tolerances& tol = ff.tolerances();

    CompositionReport report;
    report.local_lower = std::numeric_limits<double>::infinity();
    report.local_upper = 0.0;

    std::size_t total = 0;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const auto& sub = ff.subspaces()[i];
        const Matrix<Scalar>& family = local_frames[i];
        if (family.rows() != ff.ambient_dim())
            throw DimensionMismatch("local family must live in the ambient space");
        // verify membership and spanning inside the subspace
        const Matrix<Scalar> coords = sub.basis().adjoint() * family;
        const Matrix<Scalar> lifted = sub.basis() * coords;
        if ((lifted - family).frobenius_norm() >
            tol.slack() * std::max(family.frobenius_norm(), 1.0))
            throw LocalNotSpanning("local family " + std::to_string(i) +
                                   " leaves its subspace");
        const auto eig = sym_eigen(coords * coords.adjoint(), tol);
        const double lo = eig.eigenvalues.back();
        const double hi = eig.eigenvalues.front();
        if (lo <= tol.rank * std::max(hi, 1.0))
            throw LocalNotSpanning("local family " + std::to_string(i) +
                                   " does not span its subspace");
        report.local_lower = std::min(report.local_lower, lo);
        report.local_upper = std::max(report.local_upper, hi);
        total += family.cols();
    }

    Matrix<Scalar> composed(ff.ambient_dim(), total);
    std::size_t at = 0;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const double w = ff.weights()[i];
        for (std::size_t j = 0; j < local_frames[i].cols(); ++j) {
            auto v = local_frames[i].col_vector(j);
            scale_in_place<Scalar>(v, ScalarTraits<Scalar>::from_real(w));
            composed.set_col(at++, v);
        }
    }
    const auto composed_frame = Frame<Scalar>::from_columns(std::move(composed), tol);
    report.composed_lower = composed_frame.bounds().lower;
    report.composed_upper = composed_frame.bounds().upper;
    report.fusion_lower = ff.lower_bound();
    report.fusion_upper = ff.upper_bound();

    const double forward_lo = report.local_lower * report.fusion_lower;
    const double forward_hi = report.local_upper * report.fusion_upper;
    const double slack = tol.slack() * std::max(forward_hi, 1.0);
    report.forward_holds = report.composed_lower >= forward_lo - slack &&
                           report.composed_upper <= forward_hi + slack;

    const double reverse_lo = report.composed_lower / report.local_upper;
    const double reverse_hi = report.composed_upper / report.local_lower;
    report.reverse_holds = report.fusion_lower >= reverse_lo - slack &&
                           report.fusion_upper <= reverse_hi + slack;
    return report;
}

} // namespace framekit

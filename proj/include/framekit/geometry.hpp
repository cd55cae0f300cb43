#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/fusion.hpp"
#include "framekit/riesz.hpp"

namespace framekit {

/// Principal angles between two subspaces: cosines descending in [0,1]
/// (singular values of B1* B2), angles ascending in radians.
struct PrincipalAngles {
    std::vector<double> cosines;
    std::vector<double> angles;
};

template <typename Scalar>
PrincipalAngles principal_angles(const Subspace<Scalar>& a, const Subspace<Scalar>& b,
                                 const Tolerances& tol = {}) {
    if (a.ambient_dim() != b.ambient_dim())
        throw AmbientMismatch("subspaces live in different ambient spaces");
    const Matrix<Scalar> cross = a.basis().adjoint() * b.basis();
    const auto decomposition = svd(cross, tol);
    PrincipalAngles out;
    for (double s : decomposition.singulars) {
        const double c = std::clamp(s, 0.0, 1.0);
        out.cosines.push_back(c);
        out.angles.push_back(std::acos(c));
    }
    return out;
}

/// Largest correlation |<x, y>| over unit vectors in the two subspaces:
/// the cosine of the first principal angle.
template <typename Scalar>
double near_orthogonality(const Subspace<Scalar>& a, const Subspace<Scalar>& b,
                          const Tolerances& tol = {}) {
    const auto pa = principal_angles(a, b, tol);
    return pa.cosines.empty() ? 0.0 : pa.cosines.front();
}

/// Correlation bound between the spans of two blocks of an epsilon-Riesz
/// subset.  Certifies against both constants that appear for this geometry:
/// the sharper 2 eps (1 + eps/2) and the looser 2 eps (1 + eps)^2.
struct SpanCorrelationReport {
    double epsilon = 0.0;
    bool epsilon_in_hypothesis = true;  ///< bounds presume eps < 1
    double max_correlation = 0.0;
    double bound_sharp = 0.0;   ///< 2 eps (1 + eps/2)
    double bound_loose = 0.0;   ///< 2 eps (1 + eps)^2
    bool holds_sharp = false;
    bool holds_loose = false;
    bool at_equality = false;   ///< the theorem's inequality is strict; flag ties
};

template <typename Scalar>
SpanCorrelationReport check_span_correlation_bound(
    const Frame<Scalar>& f, const std::vector<std::size_t>& subset,
    const std::vector<std::vector<std::size_t>>& two_blocks) {
    if (two_blocks.size() != 2) throw InvalidPartition("exactly two blocks required");
    require_partition_of_subset(subset, two_blocks);

    const Tolerances& tol = f.tolerances();
    const RieszBounds rb = riesz_bounds(f, subset);

    const auto span_a =
        Subspace<Scalar>::from_spanning(f.vectors().select_cols(two_blocks[0]), tol);
    const auto span_b =
        Subspace<Scalar>::from_spanning(f.vectors().select_cols(two_blocks[1]), tol);

    SpanCorrelationReport report;
    report.epsilon = rb.epsilon;
    report.epsilon_in_hypothesis = rb.epsilon < 1.0;
    report.max_correlation = near_orthogonality(span_a, span_b, tol);
    report.bound_sharp = 2.0 * rb.epsilon * (1.0 + rb.epsilon / 2.0);
    report.bound_loose = 2.0 * rb.epsilon * (1.0 + rb.epsilon) * (1.0 + rb.epsilon);
    const double slack = tol.slack() * std::max(1.0, report.bound_loose);
    report.holds_sharp = report.max_correlation <= report.bound_sharp + slack;
    report.holds_loose = report.max_correlation <= report.bound_loose + slack;
    report.at_equality = std::abs(report.max_correlation - report.bound_sharp) <= slack;
    return report;
}

/// Common squared cosine of two equal-dimensional subspaces, when it exists.
struct IsoclinicParameter {
    std::optional<double> lambda;  ///< common squared cosine if spread <= tol.iso
    double spread = 0.0;           ///< max - min squared cosine
};

template <typename Scalar>
IsoclinicParameter isoclinic_parameter(const Subspace<Scalar>& a, const Subspace<Scalar>& b,
                                       const Tolerances& tol = {}) {
    if (a.ambient_dim() != b.ambient_dim())
        throw AmbientMismatch("subspaces live in different ambient spaces");
    if (a.dim() != b.dim())
        throw DimensionMismatch("isoclinic parameter needs equal subspace dimensions");
    const auto pa = principal_angles(a, b, tol);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double c : pa.cosines) {
        lo = std::min(lo, c * c);
        hi = std::max(hi, c * c);
    }
    IsoclinicParameter out;
    out.spread = hi - lo;
    if (out.spread <= tol.iso) out.lambda = 0.5 * (hi + lo);
    return out;
}

/// Pairwise squared-cosine envelope across a family of equal-dimensional
/// subspaces and the smallest epsilon making the family epsilon-nearly
/// equi-isoclinic: all squared cosines inside [lambda - eps^2, lambda + eps^2]
/// for one shared lambda.
struct PairCosineRange {
    std::size_t i = 0;
    std::size_t j = 0;
    double cos2_min = 0.0;
    double cos2_max = 0.0;
};

struct IsoclinicReport {
    std::vector<PairCosineRange> pairwise;
    double lambda_star = 0.0;       ///< midpoint of the global envelope
    double epsilon_required = 0.0;  ///< sqrt(half the global spread)
    std::optional<double> probe_epsilon;
    bool holds_at_probe = false;
};

template <typename Scalar>
IsoclinicReport certify_equi_isoclinic(const std::vector<Subspace<Scalar>>& subspaces,
                                       std::optional<double> probe_epsilon = std::nullopt,
                                       const Tolerances& tol = {}) {
    if (subspaces.size() < 2) throw TooFewSubspaces("need at least two subspaces");
    const std::size_t dim = subspaces.front().dim();
    for (const auto& s : subspaces)
        if (s.dim() != dim)
            throw DimensionMismatch("equi-isoclinic certification needs equal dimensions");

    IsoclinicReport report;
    double global_min = std::numeric_limits<double>::infinity();
    double global_max = 0.0;
    for (std::size_t i = 0; i < subspaces.size(); ++i)
        for (std::size_t j = i + 1; j < subspaces.size(); ++j) {
            const auto pa = principal_angles(subspaces[i], subspaces[j], tol);
            PairCosineRange range;
            range.i = i;
            range.j = j;
            range.cos2_min = std::numeric_limits<double>::infinity();
            range.cos2_max = 0.0;
            for (double c : pa.cosines) {
                range.cos2_min = std::min(range.cos2_min, c * c);
                range.cos2_max = std::max(range.cos2_max, c * c);
            }
            global_min = std::min(global_min, range.cos2_min);
            global_max = std::max(global_max, range.cos2_max);
            report.pairwise.push_back(range);
        }

    report.lambda_star = 0.5 * (global_max + global_min);
    report.epsilon_required = std::sqrt(std::max(0.0, 0.5 * (global_max - global_min)));
    report.probe_epsilon = probe_epsilon;
    if (probe_epsilon) report.holds_at_probe = report.epsilon_required <= *probe_epsilon;
    return report;
}

/// Combined certificate for a RIP partition with halved block cap: the
/// fusion frame is nearly tight per the RIP bracket, and every pair of block
/// spans has correlation at most 2 eps (1+eps)^2; the same constant then
/// certifies the family as nearly equi-isoclinic around lambda = 0.
struct NearOrthogonalityReport {
    NearTightnessReport tightness;
    double epsilon = 0.0;
    double orthogonality_bound = 0.0;    ///< 2 eps (1+eps)^2
    double max_pair_correlation = 0.0;
    std::size_t worst_pair_i = 0;
    std::size_t worst_pair_j = 0;
    bool orthogonality_holds = false;
    bool holds = false;
};

template <typename Scalar>
NearOrthogonalityReport certify_near_orthogonality(const Frame<Scalar>& f,
                                                   const Partition& partition,
                                                   const RipReport& rip) {
    if (2 * partition.max_block_size() > rip.s)
        throw BlockTooLarge("near-orthogonality needs blocks of size at most half the subset cap");

    NearOrthogonalityReport report;
    report.tightness = certify_near_tightness(f, partition, rip);
    report.epsilon = rip.epsilon_hat;
    report.orthogonality_bound =
        2.0 * report.epsilon * (1.0 + report.epsilon) * (1.0 + report.epsilon);

    const auto ff = fusion_frame_from_partition(f, partition);
    const Tolerances& tol = f.tolerances();
    for (std::size_t i = 0; i < ff.size(); ++i)
        for (std::size_t j = i + 1; j < ff.size(); ++j) {
            const double c = near_orthogonality(ff.subspaces()[i], ff.subspaces()[j], tol);
            if (c > report.max_pair_correlation) {
                report.max_pair_correlation = c;
                report.worst_pair_i = i;
                report.worst_pair_j = j;
            }
        }
    const double slack = tol.slack() * std::max(1.0, report.orthogonality_bound);
    report.orthogonality_holds =
        report.max_pair_correlation <= report.orthogonality_bound + slack;
    report.holds = report.tightness.holds && report.orthogonality_holds;
    return report;
}

} // namespace framekit

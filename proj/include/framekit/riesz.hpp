#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame.hpp"
#include "framekit/partition.hpp"
#include "framekit/random.hpp"

namespace framekit {

/// Riesz bounds of a vector subset: the extreme eigenvalues of the subset
/// Gram matrix, and the smallest epsilon for which the subset is an
/// epsilon-Riesz sequence in the multiplicative convention
///   1/(1+eps) <= lambda_min <= lambda_max <= 1+eps.
/// A linearly dependent subset gets epsilon = +infinity.  The additive
/// compressed-sensing constant delta = max(lambda_max-1, 1-lambda_min) is
/// derived in reports only; the multiplicative constant is what every
/// certified bracket in this library consumes.
struct RieszBounds {
    std::vector<std::size_t> subset;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double epsilon = 0.0;

    double delta_equivalent() const {
        return std::max(lambda_max - 1.0, 1.0 - lambda_min);
    }
};

/// How a RIP sweep obtained its estimate.
struct RipMethod {
    enum class Kind { exhaustive, randomized };
    Kind kind = Kind::exhaustive;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Result of a RIP sweep at subset-size cap s.  With the exhaustive method
/// epsilon_hat is the exact constant; with the randomized method it is a
/// lower bound.  The witness is the first maximizing subset in colex order
/// (exhaustive / full-coverage) or in sampling order.
struct RipReport {
    std::size_t s = 0;
    double epsilon_hat = 0.0;
    std::vector<std::size_t> witness;
    RieszBounds witness_bounds;
    RipMethod method;
    std::size_t subsets_checked = 0;
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                                     std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n-k+i) / i is always integral at this point
        const std::uint64_t num = n - k + i;
        if (result > cap / num) return cap;  // saturate
        result = result * num / i;
    }
    return result;
}

/// Subset of size k over {0..n-1} with colex rank r: the subsets are ordered
/// by largest element, then recursively.  Unranking walks the elements from
/// the top down.
inline std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t n, std::size_t k) {
    std::vector<std::size_t> subset(k);
    std::size_t top = n;
    for (std::size_t slot = k; slot > 0; --slot) {
        std::size_t c = slot - 1;
        // largest c with C(c, slot) <= rank
        while (c + 1 < top && binomial_capped(c + 1, slot) <= rank) ++c;
        subset[slot - 1] = c;
        rank -= binomial_capped(c, slot);
        top = c;
    }
    return subset;
}

template <typename Scalar>
Matrix<Scalar> subset_gram(const Frame<Scalar>& f, std::span<const std::size_t> subset) {
    Matrix<Scalar> g(subset.size(), subset.size());
    for (std::size_t j = 0; j < subset.size(); ++j)
        for (std::size_t i = 0; i < subset.size(); ++i)
            g(i, j) = f.gram()(subset[i], subset[j]);
    return g;
}

} // namespace detail

/// Extreme eigenvalues of the subset Gram and the derived multiplicative
/// epsilon.  Indices must be valid and distinct.
template <typename Scalar>
RieszBounds riesz_bounds(const Frame<Scalar>& f, std::vector<std::size_t> subset) {
    for (std::size_t i : subset)
        if (i >= f.count())
            throw IndexOutOfRange("subset index " + std::to_string(i) + " out of range " +
                                  std::to_string(f.count()));
    {
        auto sorted = subset;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DuplicateIndex("subset contains a repeated index");
    }

    const Tolerances& tol = f.tolerances();
    const auto eig = sym_eigen(detail::subset_gram(f, subset), tol);
    RieszBounds out;
    out.subset = std::move(subset);
    out.lambda_max = eig.eigenvalues.front();
    out.lambda_min = eig.eigenvalues.back();
    if (out.lambda_min <= tol.rank * std::max(out.lambda_max, 1.0)) {
        out.epsilon = std::numeric_limits<double>::infinity();
    } else {
        out.epsilon = std::max({out.lambda_max - 1.0, 1.0 / out.lambda_min - 1.0, 0.0});
    }
    return out;
}

namespace detail {

struct SweepBest {
    double epsilon = -1.0;
    std::uint64_t rank = 0;
    bool valid = false;
};

/// Deterministic reduction: larger epsilon wins, ties keep the earlier colex
/// rank.  Associative, so chunked parallel sweeps reproduce the serial
/// result bit for bit.
inline void merge_best(SweepBest& into, const SweepBest& other) {
    if (!other.valid) return;
    if (!into.valid || other.epsilon > into.epsilon ||
        (other.epsilon == into.epsilon && other.rank < into.rank)) {
        into = other;
    }
}

template <typename Scalar>
SweepBest sweep_range(const Frame<Scalar>& f, std::size_t s, std::uint64_t begin,
                      std::uint64_t end) {
    SweepBest best;
    std::vector<std::size_t> subset = colex_unrank(begin, f.count(), s);
    const Tolerances& tol = f.tolerances();
    for (std::uint64_t r = begin; r < end; ++r) {
        if (r != begin) {
            // colex successor: bump the lowest element that can move
            std::size_t i = 0;
            while (i + 1 < s && subset[i] + 1 == subset[i + 1]) {
                subset[i] = i;
                ++i;
            }
            ++subset[i];
        }
        const auto eig = sym_eigen(subset_gram(f, subset), tol);
        const double lmax = eig.eigenvalues.front();
        const double lmin = eig.eigenvalues.back();
        double eps;
        if (lmin <= tol.rank * std::max(lmax, 1.0))
            eps = std::numeric_limits<double>::infinity();
        else
            eps = std::max({lmax - 1.0, 1.0 / lmin - 1.0, 0.0});
        SweepBest candidate{eps, r, true};
        merge_best(best, candidate);
    }
    return best;
}

} // namespace detail

/// Exact RIP constant at size cap s by enumerating every size-s subset in
/// colex order.  Smaller subsets are covered by eigenvalue interlacing: any
/// size-t subset with t < s extends to a size-s superset whose epsilon is at
/// least as large (a tested invariant, not an assumption).
template <typename Scalar>
RipReport rip_exhaustive(const Frame<Scalar>& f, std::size_t s, const SweepOptions& opts = {}) {
    const std::size_t m = f.count();
    const std::size_t cap = std::min(s, m);
    if (cap == 0) throw IndexOutOfRange("subset size cap must be positive");

    const std::uint64_t total = detail::binomial_capped(m, cap, opts.budget + 1);
    if (total > opts.budget)
        throw BudgetExceeded("C(" + std::to_string(m) + "," + std::to_string(cap) +
                             ") exceeds the enumeration budget " + std::to_string(opts.budget) +
                             "; use the randomized sweep");

    const unsigned threads = std::max(1u, opts.threads);
    detail::SweepBest best;
    if (threads == 1 || total < 256) {
        best = detail::sweep_range(f, cap, 0, total);
    } else {
        std::vector<detail::SweepBest> partial(threads);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = std::min<std::uint64_t>(t * chunk, total);
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, total);
            workers.emplace_back([&, t, begin, end] {
                if (begin < end) partial[t] = detail::sweep_range(f, cap, begin, end);
            });
        }
        for (auto& w : workers) w.join();
        for (const auto& p : partial) detail::merge_best(best, p);
    }

    RipReport report;
    report.s = s;
    report.epsilon_hat = best.epsilon;
    report.witness = detail::colex_unrank(best.rank, m, cap);
    report.witness_bounds = riesz_bounds(f, report.witness);
    report.method.kind = RipMethod::Kind::exhaustive;
    report.subsets_checked = total;
    return report;
}

/// Seeded sampling lower bound on the RIP constant.  When the sample budget
/// covers the whole family (samples >= C(M,s)) the sweep enumerates instead,
/// reproducing the exhaustive report exactly.
template <typename Scalar>
RipReport rip_randomized(const Frame<Scalar>& f, std::size_t s, std::size_t samples,
                         std::uint64_t seed) {
    if (samples == 0) throw IndexOutOfRange("need at least one sample");
    const std::size_t m = f.count();
    const std::size_t cap = std::min(s, m);

    const std::uint64_t total =
        detail::binomial_capped(m, cap, std::numeric_limits<std::uint64_t>::max() / 2);

    RipReport report;
    report.s = s;
    report.method.kind = RipMethod::Kind::randomized;
    report.method.samples = samples;
    report.method.seed = seed;

    if (samples >= total) {
        detail::SweepBest best = detail::sweep_range(f, cap, 0, total);
        report.epsilon_hat = best.epsilon;
        report.witness = detail::colex_unrank(best.rank, m, cap);
        report.subsets_checked = total;
    } else {
        Rng rng(seed);
        double best_eps = -1.0;
        std::vector<std::size_t> best_subset;
        for (std::size_t k = 0; k < samples; ++k) {
            auto subset = rng.subset(m, cap);
            const auto rb = riesz_bounds(f, subset);
            if (rb.epsilon > best_eps) {
                best_eps = rb.epsilon;
                best_subset = subset;
            }
        }
        report.epsilon_hat = best_eps;
        report.witness = std::move(best_subset);
        report.subsets_checked = samples;
    }
    report.witness_bounds = riesz_bounds(f, report.witness);
    return report;
}

/// The two-sided partition inequality for an epsilon-Riesz subset: with
/// blocks {I_j} of the subset and coefficients a,
///   (1/(1+eps)^2) sum_j |sum_{i in I_j} a_i f_i|^2
///     <= |sum_i a_i f_i|^2
///     <= (1+eps)^2 sum_j |sum_{i in I_j} a_i f_i|^2.
struct PartitionInequality {
    double epsilon = 0.0;
    double lhs = 0.0;
    double mid = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

template <typename Scalar>
PartitionInequality check_partition_inequality(const Frame<Scalar>& f,
                                               const std::vector<std::size_t>& subset,
                                               const std::vector<std::vector<std::size_t>>& blocks,
                                               std::type_identity_t<std::span<const Scalar>> coeffs) {
    require_partition_of_subset(subset, blocks);
    if (coeffs.size() != subset.size())
        throw DimensionMismatch("coefficient count must match the subset size");

    const RieszBounds rb = riesz_bounds(f, subset);

    // coefficient lookup by frame index
    std::vector<std::optional<Scalar>> coeff_of(f.count());
    for (std::size_t k = 0; k < subset.size(); ++k) coeff_of[subset[k]] = coeffs[k];

    auto combination_norm_sq = [&](const std::vector<std::size_t>& indices) {
        std::vector<Scalar> acc(f.dim(), Scalar{});
        for (std::size_t i : indices) {
            const Scalar a = *coeff_of[i];
            auto column = f.vectors().col(i);
            for (std::size_t r = 0; r < f.dim(); ++r) acc[r] += a * column[r];
        }
        const double n = norm<Scalar>(acc);
        return n * n;
    };

    double block_sum = 0.0;
    for (const auto& b : blocks) block_sum += combination_norm_sq(b);

    PartitionInequality out;
    out.epsilon = rb.epsilon;
    out.mid = combination_norm_sq(subset);
    const double fac = (1.0 + rb.epsilon) * (1.0 + rb.epsilon);
    out.lhs = std::isinf(rb.epsilon) ? 0.0 : block_sum / fac;
    out.rhs = std::isinf(rb.epsilon) ? std::numeric_limits<double>::infinity() : block_sum * fac;
    const double slack = f.tolerances().slack() * std::max({out.mid, block_sum, 1.0});
    out.holds = (out.lhs <= out.mid + slack) && (out.mid <= out.rhs + slack);
    return out;
}

/// Spectral bracket of one power of the frame operator on the span.
struct PowerBound {
    double exponent = 0.0;
    double min_eig = 0.0;
    double max_eig = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    bool holds = false;
};

/// For an epsilon-Riesz basis of its span with frame operator S, every power
/// S^a (a of either sign) has spectrum on the span inside
/// [(1+eps)^-|a|, (1+eps)^|a|].  The supplied epsilon must dominate the
/// measured one.
template <typename Scalar>
std::vector<PowerBound> check_operator_power_bounds(const Frame<Scalar>& f, double epsilon,
                                                    const std::vector<double>& exponents) {
    std::vector<std::size_t> all(f.count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const RieszBounds rb = riesz_bounds(f, all);
    const Tolerances& tol = f.tolerances();
    if (!(rb.epsilon <= epsilon + tol.slack() * (1.0 + epsilon)))
        throw NotRieszBasis("measured epsilon " + std::to_string(rb.epsilon) +
                            " exceeds the supplied " + std::to_string(epsilon));

    const auto eig = sym_eigen(f.frame_operator(), tol);
    const double lead = std::max(eig.eigenvalues.front(), 0.0);
    std::vector<double> span_spectrum;
    for (double lambda : eig.eigenvalues)
        if (lambda > tol.rank * std::max(lead, 1.0)) span_spectrum.push_back(lambda);

    std::vector<PowerBound> out;
    for (double a : exponents) {
        PowerBound pb;
        pb.exponent = a;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double lambda : span_spectrum) {
            const double powed = std::pow(lambda, a);
            lo = std::min(lo, powed);
            hi = std::max(hi, powed);
        }
        if (span_spectrum.empty()) lo = hi = 1.0;
        pb.min_eig = lo;
        pb.max_eig = hi;
        const double mag = std::abs(a);
        pb.bracket_low = std::pow(1.0 + epsilon, -mag);
        pb.bracket_high = std::pow(1.0 + epsilon, mag);
        const double slack = tol.slack() * std::max(pb.bracket_high, 1.0);
        pb.holds = (pb.min_eig >= pb.bracket_low - slack) && (pb.max_eig <= pb.bracket_high + slack);
        out.push_back(pb);
    }
    return out;
}

} // namespace framekit

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "framekit/matrix.hpp"
#include "framekit/scalar.hpp"

namespace framekit {

/// Seeded random source.  mt19937_64 is pinned by the standard and the
/// Gaussian path is spelled out below instead of using
/// std::normal_distribution, whose output is implementation-defined; reports
/// generated from the same seed must not depend on the standard library
/// vendor.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in (0, 1].
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling keeps this exactly uniform
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    template <typename Scalar>
    Scalar normal_scalar() {
        if constexpr (ScalarTraits<Scalar>::is_complex) {
            const double re = normal();
            const double im = normal();
            return Scalar{re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
        } else {
            return normal();
        }
    }

    template <typename Scalar>
    Matrix<Scalar> gaussian_matrix(std::size_t rows, std::size_t cols) {
        Matrix<Scalar> m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = normal_scalar<Scalar>();
        return m;
    }

    template <typename Scalar>
    std::vector<Scalar> gaussian_vector(std::size_t n) {
        std::vector<Scalar> v(n);
        for (auto& x : v) x = normal_scalar<Scalar>();
        return v;
    }

    template <typename Scalar>
    std::vector<Scalar> unit_vector(std::size_t n) {
        auto v = gaussian_vector<Scalar>(n);
        auto r = norm<Scalar>(v);
        while (r < 1e-12) {  // astronomically unlikely; regenerate
            v = gaussian_vector<Scalar>(n);
            r = norm<Scalar>(v);
        }
        scale_in_place<Scalar>(v, ScalarTraits<Scalar>::from_real(1.0 / r));
        return v;
    }

    /// Sorted uniform k-subset of {0..n-1} via partial Fisher-Yates.
    std::vector<std::size_t> subset(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i)
            std::swap(pool[i], pool[i + static_cast<std::size_t>(below(n - i))]);
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace framekit

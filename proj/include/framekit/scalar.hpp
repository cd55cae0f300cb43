#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace framekit {

/// Field abstraction: the library is generic over real and complex scalars.
/// Inner products are linear in the first argument, conjugate-linear in the
/// second; every derived quantity (norms, Gram spectra, bounds) is
/// convention-independent.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    using Real = double;
    static constexpr bool is_complex = false;
    static double conj(double x) { return x; }
    static double real(double x) { return x; }
    static double abs(double x) { return std::abs(x); }
    static double from_real(double x) { return x; }
};

template <>
struct ScalarTraits<std::complex<double>> {
    using Real = double;
    static constexpr bool is_complex = true;
    static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
    static double real(const std::complex<double>& x) { return x.real(); }
    static double abs(const std::complex<double>& x) { return std::abs(x); }
    static std::complex<double> from_real(double x) { return {x, 0.0}; }
};

template <typename S>
using RealOf = typename ScalarTraits<S>::Real;

template <typename S>
inline bool is_finite_scalar(const S& x) {
    if constexpr (ScalarTraits<S>::is_complex) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    } else {
        return std::isfinite(x);
    }
}

} // namespace framekit

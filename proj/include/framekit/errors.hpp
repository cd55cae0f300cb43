#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

/// Base class for everything framekit throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- numerics --------------------------------------------------------------
class NonFinite : public Error { using Error::Error; };
class NotSquare : public Error { using Error::Error; };
class NotSymmetric : public Error { using Error::Error; };
class NegativeEigenvalue : public Error { using Error::Error; };
class DidNotConverge : public Error { using Error::Error; };

// -- frames ----------------------------------------------------------------
class DimensionMismatch : public Error { using Error::Error; };
class NotSpanning : public Error { using Error::Error; };
class CountTooSmall : public Error { using Error::Error; };

// -- subsets / partitions ---------------------------------------------------
class IndexOutOfRange : public Error { using Error::Error; };
class DuplicateIndex : public Error { using Error::Error; };
class InvalidPartition : public Error { using Error::Error; };
class BudgetExceeded : public Error { using Error::Error; };
class NotRieszBasis : public Error { using Error::Error; };

// -- fusion ------------------------------------------------------------------
class NotTight : public Error { using Error::Error; };
class NotUnitNorm : public Error { using Error::Error; };
class BlockTooLarge : public Error { using Error::Error; };
class NotAFusionFrame : public Error { using Error::Error; };
class MeasurementOutsideSubspace : public Error { using Error::Error; };
class LocalNotSpanning : public Error { using Error::Error; };

// -- geometry -----------------------------------------------------------------
class AmbientMismatch : public Error { using Error::Error; };
class TooFewSubspaces : public Error { using Error::Error; };

// -- replacement ----------------------------------------------------------------
class DependentBlock : public Error { using Error::Error; };
class UnknownBlock : public Error { using Error::Error; };
class EpsilonTooLarge : public Error { using Error::Error; };
class EpsilonOutOfRange : public Error { using Error::Error; };
class FormulaNegative : public Error { using Error::Error; };
class HypothesisViolated : public Error { using Error::Error; };

// -- io ----------------------------------------------------------------------
class IoError : public Error { using Error::Error; };

} // namespace framekit

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace promenade {

/// Domain failure with a stable machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), detail_(std::move(detail)) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string kind_;
    std::string detail_;
};

#define PROMENADE_DEFINE_ERROR(Name)                                         \
    struct Name : Error {                                                    \
        explicit Name(std::string detail = {}) : Error(#Name, std::move(detail)) {} \
    }

PROMENADE_DEFINE_ERROR(InvalidInput);
PROMENADE_DEFINE_ERROR(PatternLargerThanHost);
PROMENADE_DEFINE_ERROR(NotSeparable);
PROMENADE_DEFINE_ERROR(NotPruned);
PROMENADE_DEFINE_ERROR(SizeCapExceeded);
PROMENADE_DEFINE_ERROR(ArityMismatch);
PROMENADE_DEFINE_ERROR(OddParity);
PROMENADE_DEFINE_ERROR(DivisibleByX);
PROMENADE_DEFINE_ERROR(NonVanishingAtOrigin);
PROMENADE_DEFINE_ERROR(ZeroPolynomial);
PROMENADE_DEFINE_ERROR(SegmentNotOnPolygon);
PROMENADE_DEFINE_ERROR(NotARoot);
PROMENADE_DEFINE_ERROR(UnsupportedFieldExtension);
PROMENADE_DEFINE_ERROR(TruncationTooShort);
PROMENADE_DEFINE_ERROR(InfiniteMultiplicity);
PROMENADE_DEFINE_ERROR(PrecisionExhausted);
PROMENADE_DEFINE_ERROR(NoRealBranches);
PROMENADE_DEFINE_ERROR(DegenerateAfterRetries);
PROMENADE_DEFINE_ERROR(CurvesIntersect);
PROMENADE_DEFINE_ERROR(QuadratureNotConverged);
PROMENADE_DEFINE_ERROR(NotCoprime);

#undef PROMENADE_DEFINE_ERROR

} // namespace promenade

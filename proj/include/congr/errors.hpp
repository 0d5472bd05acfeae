#ifndef CONGR_ERRORS_HPP
#define CONGR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace congr {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CONGR_DEFINE_ERROR(Name)                                 \
    struct Name : Error {                                        \
        explicit Name(const std::string& msg) : Error(msg) {}    \
    }

CONGR_DEFINE_ERROR(ZeroInput);
CONGR_DEFINE_ERROR(PrecisionTooLow);
CONGR_DEFINE_ERROR(NotCritical);
CONGR_DEFINE_ERROR(BadWeight);
CONGR_DEFINE_ERROR(OutOfRange);
CONGR_DEFINE_ERROR(NonIntegralCoefficient);
CONGR_DEFINE_ERROR(UnsupportedField);
CONGR_DEFINE_ERROR(UnitObstruction);
CONGR_DEFINE_ERROR(InsufficientCoefficients);
CONGR_DEFINE_ERROR(WeightOrder);
CONGR_DEFINE_ERROR(NeedMoreCoefficients);
CONGR_DEFINE_ERROR(RootNumberUnknown);
CONGR_DEFINE_ERROR(Inconsistent);
CONGR_DEFINE_ERROR(UnsupportedLevel);
CONGR_DEFINE_ERROR(RecognitionFailed);
CONGR_DEFINE_ERROR(UnsupportedLocalDatum);
CONGR_DEFINE_ERROR(EtaNotUnit);
CONGR_DEFINE_ERROR(ConfigInvalid);
CONGR_DEFINE_ERROR(Unsupported);

#undef CONGR_DEFINE_ERROR

}  // namespace congr

#endif

#ifndef ELLH_ERRORS_HPP
#define ELLH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ellh {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define ELLH_ERROR_TYPE(Name)                                   \
    struct Name : Error {                                       \
        explicit Name(const std::string& m = #Name) : Error(m) {} \
    }

ELLH_ERROR_TYPE(SingularModel);
ELLH_ERROR_TYPE(PointNotOnCurve);
ELLH_ERROR_TYPE(PointIsOrigin);
ELLH_ERROR_TYPE(PrecisionExhausted);
ELLH_ERROR_TYPE(NotSplitMultiplicative);
ELLH_ERROR_TYPE(NotMinimalModel);
ELLH_ERROR_TYPE(DuplicatePoints);
ELLH_ERROR_TYPE(ParameterTooSmall);
ELLH_ERROR_TYPE(H0Violated);
ELLH_ERROR_TYPE(InstanceTooLarge);
ELLH_ERROR_TYPE(PreconditionViolated);
ELLH_ERROR_TYPE(TorsionShortCircuit);
ELLH_ERROR_TYPE(FactorizationFailed);
ELLH_ERROR_TYPE(UnknownFormat);
ELLH_ERROR_TYPE(ParseError);

#undef ELLH_ERROR_TYPE

} // namespace ellh

#endif

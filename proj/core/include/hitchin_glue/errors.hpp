#pragma once

#include <stdexcept>
#include <string>

namespace hg {

// Every library failure carries a stable kind name; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }
    // Errors caused by bad parameters rather than by numerics.
    virtual bool is_config_error() const noexcept { return false; }

private:
    std::string kind_;
};

#define HG_DEFINE_ERROR(Name, Config)                                          \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
        bool is_config_error() const noexcept override { return Config; }      \
    };

HG_DEFINE_ERROR(InvalidArgument, true)
HG_DEFINE_ERROR(MatchingViolation, true)
HG_DEFINE_ERROR(CutoffSupportError, true)
HG_DEFINE_ERROR(InsufficientSweep, true)
HG_DEFINE_ERROR(NearSingularDenominator, false)
HG_DEFINE_ERROR(QuadratureDivergence, false)
HG_DEFINE_ERROR(NonConvergence, false)
HG_DEFINE_ERROR(SingularOperator, false)
HG_DEFINE_ERROR(ContractionFailure, false)

#undef HG_DEFINE_ERROR

}  // namespace hg

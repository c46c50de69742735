#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

/**
 * Error kinds raised by the library.
 *
 * Each kind maps to a distinct exception type so callers can catch exactly
 * what they are prepared to handle; `pcf::error` is the common base.
 */
enum class error_kind {
    not_divisible,
    not_squarefree,
    reducible,
    not_integral,
    not_unit,
    unsupported,
    precision_exceeded,
    budget_exceeded,
    bound_exceeded,
    shape_violation,
    hypothesis_unmet,
    oracle_mismatch,
    invalid_argument,
};

inline const char* to_string(error_kind k) {
    switch (k) {
        case error_kind::not_divisible: return "NotDivisible";
        case error_kind::not_squarefree: return "NotSquarefree";
        case error_kind::reducible: return "Reducible";
        case error_kind::not_integral: return "NotIntegral";
        case error_kind::not_unit: return "NotUnit";
        case error_kind::unsupported: return "Unsupported";
        case error_kind::precision_exceeded: return "PrecisionExceeded";
        case error_kind::budget_exceeded: return "BudgetExceeded";
        case error_kind::bound_exceeded: return "BoundExceeded";
        case error_kind::shape_violation: return "ShapeViolation";
        case error_kind::hypothesis_unmet: return "HypothesisUnmet";
        case error_kind::oracle_mismatch: return "OracleMismatch";
        case error_kind::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

#define PCF_DEFINE_ERROR(name, kind_value)                                  \
    class name : public error {                                             \
    public:                                                                 \
        explicit name(const std::string& what) : error(kind_value, what) {} \
    };

PCF_DEFINE_ERROR(not_divisible_error, error_kind::not_divisible)
PCF_DEFINE_ERROR(not_squarefree_error, error_kind::not_squarefree)
PCF_DEFINE_ERROR(reducible_error, error_kind::reducible)
PCF_DEFINE_ERROR(not_integral_error, error_kind::not_integral)
PCF_DEFINE_ERROR(not_unit_error, error_kind::not_unit)
PCF_DEFINE_ERROR(unsupported_error, error_kind::unsupported)
PCF_DEFINE_ERROR(precision_exceeded_error, error_kind::precision_exceeded)
PCF_DEFINE_ERROR(budget_exceeded_error, error_kind::budget_exceeded)
PCF_DEFINE_ERROR(bound_exceeded_error, error_kind::bound_exceeded)
PCF_DEFINE_ERROR(shape_violation_error, error_kind::shape_violation)
PCF_DEFINE_ERROR(hypothesis_unmet_error, error_kind::hypothesis_unmet)
PCF_DEFINE_ERROR(oracle_mismatch_error, error_kind::oracle_mismatch)
PCF_DEFINE_ERROR(invalid_argument_error, error_kind::invalid_argument)

#undef PCF_DEFINE_ERROR

}  // namespace pcf

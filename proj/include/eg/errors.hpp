#pragma once

#include <stdexcept>
#include <string>

namespace eg {

/// Base of every domain error. `code()` is the machine-readable tag the CLI
/// reports on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define EG_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

EG_DEFINE_ERROR(SyntaxError);
EG_DEFINE_ERROR(ValidationError);
EG_DEFINE_ERROR(InconsistentError);
EG_DEFINE_ERROR(PatternMismatch);
EG_DEFINE_ERROR(UnknownSpec);
EG_DEFINE_ERROR(SizeLimit);
EG_DEFINE_ERROR(BudgetExceeded);
EG_DEFINE_ERROR(NotProper);
EG_DEFINE_ERROR(DimensionMismatch);
EG_DEFINE_ERROR(PositionError);
EG_DEFINE_ERROR(NotInvertible);
EG_DEFINE_ERROR(NotClosed);
EG_DEFINE_ERROR(ColouringMismatch);

#undef EG_DEFINE_ERROR

} // namespace eg

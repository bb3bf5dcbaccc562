#pragma once

#include <stdexcept>
#include <string>

namespace dayahead {

/// Planning problem has no real solution; carries the offending discriminant.
class InfeasibilityError : public std::runtime_error {
public:
    InfeasibilityError(const std::string& msg, double discriminant)
        : std::runtime_error(msg), discriminant_(discriminant) {}

    double discriminant() const { return discriminant_; }

private:
    double discriminant_;
};

/// Requested total power cannot be met by the fleet.
class DispatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural assumption on the fleet does not hold where it is needed.
class AssumptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dispatch and price results disagree; indicates a bug upstream.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or configuration; message names the row or field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dayahead

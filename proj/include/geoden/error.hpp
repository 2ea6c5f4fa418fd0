#pragma once

#include <stdexcept>
#include <string>

namespace geoden {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unrecoverable input problem: unreadable stream, bad header, grid shape mismatch.
class IngestError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied value failed validation. `field` names the offending input
/// ("window.current_year", "regions[2].countries[0]") and `code` is a stable
/// machine-readable tag.
class ValidationError : public Error {
public:
    ValidationError(std::string code, std::string field, const std::string& message)
        : Error(message), code_(std::move(code)), field_(std::move(field)) {}

    const std::string& code() const { return code_; }
    const std::string& field() const { return field_; }

private:
    std::string code_;
    std::string field_;
};

}  // namespace geoden

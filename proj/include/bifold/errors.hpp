#pragma once

#include <stdexcept>

namespace bifold {

// Base class for all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition or data invariant does not hold.
struct ValidationError : Error {
    using Error::Error;
};

// Malformed input document (syntax or schema).
struct ParseError : Error {
    using Error::Error;
};

// Binary payload and header that do not line up.
struct FormatError : Error {
    using Error::Error;
};

// Template bank problems: unknown placeholder, empty family, bad section.
struct TemplateError : Error {
    using Error::Error;
};

// The two grasp regions disagree on both axes for a pick action.
struct UnresolvableLocationError : Error {
    using Error::Error;
};

// Camera sampling exhausted its resample budget.
struct NoValidCameraError : Error {
    using Error::Error;
};

}  // namespace bifold

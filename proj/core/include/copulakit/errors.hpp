#pragma once

#include <stdexcept>
#include <string>

namespace copulakit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A copula parameter lies outside its family's admissible domain.
struct ParameterDomainError : Error {
    using Error::Error;
};

// A Kendall's-tau value cannot be mapped into the requested family.
struct InversionRangeError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

struct DegenerateKernelError : Error {
    using Error::Error;
};

struct CsvParseError : Error {
    using Error::Error;
};

}  // namespace copulakit

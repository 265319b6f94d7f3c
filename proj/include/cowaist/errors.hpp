#pragma once

#include <stdexcept>

namespace cowaist
{

/// Raised for contract violations by callers (bad weights, bad arity, malformed text).
class usage_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis of an operation does not hold for the given data,
/// e.g. a vanishing Chern-number witness.
class hypothesis_failure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace cowaist

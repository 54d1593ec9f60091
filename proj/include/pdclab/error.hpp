#pragma once

#include <stdexcept>
#include <string>

namespace pdclab {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters, dimension mismatches, malformed configuration.
class ConfigError : public Error
{
public:
    using Error::Error;
};

// An operation was handed a state outside the sector it is defined on.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

// Count data cannot support an estimate (zero singles or coincidences).
class EstimateError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace pdclab

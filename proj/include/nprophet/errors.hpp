#pragma once

#include <stdexcept>
#include <string>

namespace nprophet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files, config values or column references.
class ParseError : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

// Normalization denominator is zero (constant input).
class DegenerateScale : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class InvalidChangepoint : public Error {
public:
    using Error::Error;
};

class UnknownCountry : public Error {
public:
    using Error::Error;
};

class NonFiniteGradient : public Error {
public:
    using Error::Error;
};

// Every loss recorded by a learning-rate range test was non-finite.
class DivergedTest : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

class NonStationary : public Error {
public:
    using Error::Error;
};

// Future regressor values absent for a requested timestamp.
class MissingRegressor : public Error {
public:
    using Error::Error;
};

} // namespace nprophet

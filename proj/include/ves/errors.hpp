#pragma once

#include <stdexcept>
#include <string>

namespace ves {

// Base type for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A raw parameter value failed an admissibility constraint.
class ConstraintViolation : public Error {
public:
    ConstraintViolation(std::string name, double value, std::string requirement)
        : Error("parameter '" + name + "' = " + std::to_string(value) +
                " violates: " + requirement),
          name_(std::move(name)), value_(value),
          requirement_(std::move(requirement)) {}

    const std::string& name() const { return name_; }
    double value() const { return value_; }
    const std::string& requirement() const { return requirement_; }

private:
    std::string name_;
    double value_;
    std::string requirement_;
};

// NaN or infinity where a finite number is required.
class NonFinite : public Error {
public:
    explicit NonFinite(const std::string& name)
        : Error("'" + name + "' must be finite") {}
};

class NegativeInput : public Error {
public:
    NegativeInput(const std::string& name, double value)
        : Error("'" + name + "' = " + std::to_string(value) + " must be >= 0") {}
};

class NonPositiveInput : public Error {
public:
    NonPositiveInput(const std::string& name, double value)
        : Error("'" + name + "' = " + std::to_string(value) + " must be > 0") {}
};

class NonPositiveLabor : public Error {
public:
    explicit NonPositiveLabor(double value)
        : Error("labor = " + std::to_string(value) + " must be > 0") {}
};

// An observation row with k <= 0, y <= 0 or weight <= 0.
class NonPositiveObservation : public Error {
public:
    explicit NonPositiveObservation(const std::string& detail)
        : Error("bad observation: " + detail) {}
};

// sigma has no interior maximum for this parameter set.
class NoTurningPoint : public Error {
public:
    explicit NoTurningPoint(const std::string& why)
        : Error("no turning point: " + why) {}
};

class GridError : public Error {
public:
    explicit GridError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error(what) {}
};

// Malformed text input; line is 1-based, 0 means the file as a whole.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace ves

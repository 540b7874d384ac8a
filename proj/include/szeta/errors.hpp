#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace szeta {

// Argument outside an operation's supported range.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical integration did not reach the requested tolerance.
// `estimate` carries the best value obtained before giving up.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Input data violates a documented invariant (ordering, coverage, counts).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Zero search could not reconcile its count with the smooth counting term.
class MissedZerosError : public std::runtime_error {
public:
    MissedZerosError(const std::string& what, double location)
        : std::runtime_error(what), location_(location) {}

    double location() const noexcept { return location_; }

private:
    double location_;
};

} // namespace szeta

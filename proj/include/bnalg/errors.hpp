#pragma once

#include <stdexcept>
#include <string>

namespace bnalg {

// Input documents (JSON, polynomial text, CLI arguments) that fail to parse
// or violate schema invariants.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structural mismatch between data and operation: wrong table shape for a
// polynomial, network shape not matching a constraint family, etc.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Exact and floating-point rank backends disagree after exhausting all seeds.
class BackendDisagreement : public std::runtime_error {
public:
    BackendDisagreement(const std::string& what, long long exact, long long numeric)
        : std::runtime_error(what), exact_value(exact), numeric_value(numeric) {}

    long long exact_value;
    long long numeric_value;
};

}  // namespace bnalg

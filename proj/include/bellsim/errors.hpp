// errors.hpp
// Exception taxonomy shared by the library and the CLI exit-code mapping.

#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

// Bad or inconsistent user configuration (CLI exit code 2).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An event occurred that the model assigns probability zero (CLI exit code 3).
class model_violation_error : public std::runtime_error {
public:
    explicit model_violation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical invariant failed: non-Hermitian operator, broken normalization,
// negative probability beyond tolerance, etc. (CLI exit code 4).
class invariant_error : public std::runtime_error {
public:
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Conditioning on a zero-probability block of a joint distribution.
class undefined_conditional_error : public invariant_error {
public:
    explicit undefined_conditional_error(const std::string& msg) : invariant_error(msg) {}
};

} // namespace bellsim

#pragma once

#include <stdexcept>
#include <string>

namespace qfkit {

// Evaluation at a pole of a meromorphic function (zeta at s = 1, Gamma at
// nonpositive integers).
class pole_error : public std::domain_error {
public:
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

// A numerical procedure could not certify its result: quadrature budget
// exhausted, series failed to converge, unstable truncation.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qfkit

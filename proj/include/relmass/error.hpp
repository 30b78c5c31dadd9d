#pragma once

#include <stdexcept>
#include <string>

namespace relmass {

// Argument outside an operation's domain (negative time, s outside [0,t], ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Inputs that violate a structural contract (asymmetric generators, empty grid, ...).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Problem size beyond what an explicit construction supports.
class SizeError : public std::length_error {
  public:
    using std::length_error::length_error;
};

class ConnectivityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Non-convergence or a computed value failing an integrity check.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EstimationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace relmass

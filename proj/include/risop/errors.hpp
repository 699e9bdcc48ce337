#pragma once

#include <stdexcept>
#include <string>

namespace risop {

// Root of every numeric / configuration failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Argument sits on a pole of the function (e.g. Gamma at a non-positive integer).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

// The generalized-K surrogate cannot reproduce the supplied moments.
class MomentMatchFailure : public Error {
public:
    using Error::Error;
};

// 4 sigma_p^2 + 4 d_x^2 sigma_o^2 == 0, so the jitter shape exponent is undefined.
class DegenerateJitter : public Error {
public:
    using Error::Error;
};

// zeta >= 2 min(k_A, m_A): the closed-form floor hits a Gamma pole or negative argument.
class FloorUndefined : public Error {
public:
    using Error::Error;
};

// Parameters fall in a regime where a closed-form expansion is not defined.
class DegenerateParameters : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace risop

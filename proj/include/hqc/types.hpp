#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad indices, out-of-chart points, open loops, unknown names.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A discretization parameter would leave the chart (finite differences, splitting).
class InvalidDiscretization : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// A numerical result failed certification (unitarity defect, non-finite entries).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace hqc

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdpot {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Malformed or inconsistent input (bad curve, bad file, bad flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical failure: boundary pole, singular system, non-convergence.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interior evaluation requested too close to the boundary.
class NearBoundaryError : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace qdpot

#pragma once

#include <stdexcept>
#include <string>

namespace oll {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeError : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };
struct EmptyBall : Error { using Error::Error; };
struct EmptyLadder : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct UnsupportedCoefficient : Error { using Error::Error; };
struct InvalidObstacle : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct OriginSingularity : Error { using Error::Error; };
struct EmptyLambdaGrid : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };

struct NonConvergence : Error {
  NonConvergence(const std::string& what, int iters, double resid)
      : Error(what), iterations(iters), residual(resid) {}
  int iterations;
  double residual;
};

}  // namespace oll

#ifndef OQEC_ERRORS_HPP
#define OQEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oqec {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class NotTracePreserving : public Error {
public:
  NotTracePreserving(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

class NotIsometry : public Error {
public:
  using Error::Error;
};

class NotUnitary : public Error {
public:
  using Error::Error;
};

class NotProjector : public Error {
public:
  using Error::Error;
};

class NotCorrectable : public Error {
public:
  using Error::Error;
};

class NotVerified : public Error {
public:
  using Error::Error;
};

// Algebra closure iteration exceeded the d^2 dimension bound.
class ClosureNotReached : public Error {
public:
  using Error::Error;
};

// Block structure residual stayed above tolerance after all retries.
class DecompositionFailed : public Error {
public:
  DecompositionFailed(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

class MatrixUnitIdentityViolation : public Error {
public:
  MatrixUnitIdentityViolation(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

class UnknownFixture : public Error {
public:
  using Error::Error;
};

class BadParams : public Error {
public:
  using Error::Error;
};

}  // namespace oqec

#endif

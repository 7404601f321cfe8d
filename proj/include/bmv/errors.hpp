#pragma once

#include <stdexcept>
#include <string>

namespace bmv {

// Failure taxonomy mirrored by the CLI exit codes: invalid input (2) vs
// numerical breakdown (3). Verification *failures* are report entries,
// never exceptions.
enum class ErrorCategory { validation, numerical };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory cat, std::string msg)
      : std::runtime_error(std::move(msg)), category_(cat) {}
  ErrorCategory category() const { return category_; }

private:
  ErrorCategory category_;
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(std::string msg)
      : Error(ErrorCategory::validation, std::move(msg)) {}
};

struct NotHermitian : Error {
  NotHermitian(std::string which, double deviation)
      : Error(ErrorCategory::validation,
              which + " is not Hermitian (max deviation " +
                  std::to_string(deviation) + ")"),
        matrix(std::move(which)), max_deviation(deviation) {}
  std::string matrix;
  double max_deviation;
};

struct NotPositiveSemidefinite : Error {
  explicit NotPositiveSemidefinite(double eig)
      : Error(ErrorCategory::validation,
              "B is not positive semidefinite (min eigenvalue " +
                  std::to_string(eig) + ")"),
        min_eigenvalue(eig) {}
  double min_eigenvalue;
};

struct NotCommuting : Error {
  explicit NotCommuting(double dev)
      : Error(ErrorCategory::validation,
              "pair does not commute (max |AB-BA| entry " +
                  std::to_string(dev) + ")"),
        commutator_max(dev) {}
  double commutator_max;
};

// Measure construction needs distinct, strictly positive eigenvalues of B.
// Callers regularize first: perturb_B replaces b_j by b_j + eps*j.
struct DegenerateB : Error {
  explicit DegenerateB(std::string msg)
      : Error(ErrorCategory::validation, std::move(msg)) {}
};

struct ParseError : Error {
  explicit ParseError(std::string msg)
      : Error(ErrorCategory::validation, std::move(msg)) {}
};

struct NoConvergence : Error {
  NoConvergence(std::string what, int iters, double residual)
      : Error(ErrorCategory::numerical,
              what + " did not converge after " + std::to_string(iters) +
                  " iterations (worst residual " + std::to_string(residual) +
                  ")"),
        iterations(iters), worst_residual(residual) {}
  int iterations;
  double worst_residual;
};

struct LabelAmbiguity : Error {
  LabelAmbiguity(double t0, double margin)
      : Error(ErrorCategory::numerical,
              "branch labeling at anchor t0=" + std::to_string(t0) +
                  " remained ambiguous (margin " + std::to_string(margin) +
                  ") after retries"),
        anchor(t0) {}
  double anchor;
};

struct CollisionGuardTripped : Error {
  explicit CollisionGuardTripped(std::string msg)
      : Error(ErrorCategory::numerical, std::move(msg)) {}
};

struct CancellationOverflow : Error {
  CancellationOverflow(double max_term, double result)
      : Error(ErrorCategory::numerical,
              "contour quadrature cancellation beyond double-double range "
              "(max |term| " +
                  std::to_string(max_term) + ", result " +
                  std::to_string(result) + "); reduce the contour radius"),
        worst_term(max_term) {}
  double worst_term;
};

struct OracleUnstable : Error {
  OracleUnstable(double delta, double tol)
      : Error(ErrorCategory::numerical,
              "inverse-Laplace oracle refinement unstable (change " +
                  std::to_string(delta) + " > tol " + std::to_string(tol) +
                  ")"),
        change(delta) {}
  double change;
};

struct PoleTooCloseToContour : Error {
  PoleTooCloseToContour(double t, double radius)
      : Error(ErrorCategory::numerical,
              "pole t=" + std::to_string(t) + " too close to contour radius " +
                  std::to_string(radius)),
        pole(t), contour_radius(radius) {}
  double pole;
  double contour_radius;
};

// Internal consistency violations (a bug, not bad input).
struct NumericalError : Error {
  explicit NumericalError(std::string msg)
      : Error(ErrorCategory::numerical, std::move(msg)) {}
};

} // namespace bmv

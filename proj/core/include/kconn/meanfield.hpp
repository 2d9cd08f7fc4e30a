#pragma once

#include <cstdint>
#include <stdexcept>

namespace kconn::meanfield {

struct MeanFieldSpec {
    std::int64_t n = 2;
    double p = 0.0;
    double epsilon = 0.0;
    double tolerance = 1e-12;
    std::int64_t max_iterations = 1'000'000;

    void validate() const;
};

struct FixedPointResult {
    double i_tilde;
    double residual;
    std::int64_t iterations;
};

/// Thrown when the fixed-point solve cannot reach the requested tolerance;
/// carries the last iterate and its residual.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(double last_iterate, double residual);
    double last_iterate() const { return last_iterate_; }
    double residual() const { return residual_; }

  private:
    double last_iterate_;
    double residual_;
};

/// Smallest solution in (0,1] of I = [1 - p(1-eps)(1-I)]^(n-2). The map is
/// monotone non-decreasing on [0,1], so iteration from 0 climbs to the
/// smallest fixed point; a bracketed bisection takes over if iteration stalls.
FixedPointResult solve_fixed_point(const MeanFieldSpec& spec);

/// Finite-n cavity estimate of the breakdown probability (k = 1), clamped to
/// [0,1] against floating-point drift.
double mf_breakdown(const MeanFieldSpec& spec);

}  // namespace kconn::meanfield

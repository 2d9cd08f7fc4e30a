#include "kconn/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kconn/io.hpp"

namespace kconn::meanfield {

void MeanFieldSpec::validate() const {
    if (n < 2) throw std::invalid_argument("meanfield: n must be >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("meanfield: p must be in [0,1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("meanfield: epsilon must be in [0,1]");
    if (!(tolerance > 0.0)) throw std::invalid_argument("meanfield: tolerance must be positive");
    if (max_iterations < 1) throw std::invalid_argument("meanfield: max_iterations must be >= 1");
}

ConvergenceError::ConvergenceError(double last_iterate, double residual)
    : std::runtime_error("fixed-point solve did not converge: I=" + format_double(last_iterate) +
                         " residual=" + format_double(residual)),
      last_iterate_(last_iterate),
      residual_(residual) {}

namespace {

double rhs(const MeanFieldSpec& spec, double i) {
    const double base = 1.0 - spec.p * (1.0 - spec.epsilon) * (1.0 - i);
    return std::pow(base, static_cast<double>(spec.n - 2));
}

}  // namespace

FixedPointResult solve_fixed_point(const MeanFieldSpec& spec) {
    spec.validate();
    double i = 0.0;
    std::int64_t iterations = 0;
    while (iterations < spec.max_iterations) {
        const double next = rhs(spec, i);
        ++iterations;
        const double step = next - i;
        const double residual = std::abs(next - rhs(spec, next));
        if (std::abs(step) <= spec.tolerance && residual <= spec.tolerance)
            return {next, residual, iterations};
        i = next;
    }

    // Iteration stalled (tangency region). The current iterate sits at or
    // below the smallest root, so bracket the first sign change of
    // g(I) = I - rhs(I) above it and bisect.
    double lo = i;
    double hi = 1.0;
    const int scan_steps = 10'000;
    bool bracketed = false;
    for (int step = 1; step <= scan_steps; ++step) {
        const double x = lo + (1.0 - lo) * step / scan_steps;
        if (x - rhs(spec, x) >= 0.0) {
            hi = x;
            lo = lo + (1.0 - lo) * (step - 1) / static_cast<double>(scan_steps);
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        // g < 0 all the way up; I = 1 is always a fixed point.
        return {1.0, std::abs(1.0 - rhs(spec, 1.0)), iterations};
    }
    for (int step = 0; step < 200; ++step) {
        const double mid = 0.5 * (lo + hi);
        (mid - rhs(spec, mid) < 0.0 ? lo : hi) = mid;
    }
    const double root = hi;
    const double residual = std::abs(root - rhs(spec, root));
    if (residual > spec.tolerance * 100) throw ConvergenceError(root, residual);
    return {root, residual, iterations};
}

double mf_breakdown(const MeanFieldSpec& spec) {
    const double i_tilde = solve_fixed_point(spec).i_tilde;
    const double kappa = 1.0 - spec.epsilon;
    const double inner =
        std::pow(1.0 - spec.p * kappa * (1.0 - i_tilde), static_cast<double>(spec.n - 1));
    const double value = 1.0 - std::pow(1.0 - kappa * inner, static_cast<double>(spec.n));
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace kconn::meanfield

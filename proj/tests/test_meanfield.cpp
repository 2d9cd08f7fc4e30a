#include <doctest.h>

#include <cmath>

#include "kconn/meanfield.hpp"

using kconn::meanfield::MeanFieldSpec;
using kconn::meanfield::mf_breakdown;
using kconn::meanfield::solve_fixed_point;

namespace {

double rhs(const MeanFieldSpec& spec, double i) {
    return std::pow(1.0 - spec.p * (1.0 - spec.epsilon) * (1.0 - i),
                    static_cast<double>(spec.n - 2));
}

// Oracle: dense grid scan for the smallest non-negative root of I = rhs(I),
// refined by bisection. Independent of the production iteration.
double smallest_root_by_scan(const MeanFieldSpec& spec, int grid) {
    auto g = [&](double x) { return x - rhs(spec, x); };
    double prev = 0.0;
    for (int step = 1; step <= grid; ++step) {
        const double x = static_cast<double>(step) / grid;
        if (g(prev) <= 0.0 && g(x) >= 0.0) {
            double lo = prev, hi = x;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (g(mid) < 0.0 ? lo : hi) = mid;
            }
            return hi;
        }
        prev = x;
    }
    return 1.0;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(solve_fixed_point({1, 0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point({10, -0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point({10, 0.5, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point({10, 0.5, 0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("fixed point satisfies its own equation") {
    for (double p : {0.001, 0.01, 0.05, 0.2, 0.8}) {
        for (double eps : {0.0, 0.3, 0.7}) {
            const MeanFieldSpec spec{100, p, eps};
            const auto fp = solve_fixed_point(spec);
            CAPTURE(p);
            CAPTURE(eps);
            CHECK(fp.i_tilde >= 0.0);
            CHECK(fp.i_tilde <= 1.0);
            CHECK(std::abs(fp.i_tilde - rhs(spec, fp.i_tilde)) < 1e-10);
        }
    }
}

TEST_CASE("solver returns the smallest root") {
    // Grid-scan oracle at fine resolution across connected and disconnected
    // regimes, including near-critical p where roots nearly merge.
    for (double p : {0.005, 0.02, 0.046, 0.05, 0.06, 0.2}) {
        const MeanFieldSpec spec{100, p, 0.0};
        const double got = solve_fixed_point(spec).i_tilde;
        const double want = smallest_root_by_scan(spec, 1'000'000);
        CAPTURE(p);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("degenerate parameters") {
    // p = 0: isolated nodes, I = 1 is the only fixed point.
    CHECK(solve_fixed_point({50, 0.0, 0.0}).i_tilde == doctest::Approx(1.0));
    // eps = 1: every neighbor is dead, same situation.
    CHECK(solve_fixed_point({50, 0.5, 1.0}).i_tilde == doctest::Approx(1.0));
    // Dense graph: isolation is essentially impossible.
    CHECK(solve_fixed_point({200, 0.9, 0.0}).i_tilde < 1e-100);
}

TEST_CASE("breakdown estimate behaves monotonically") {
    // Denser graphs are harder to break; heavier faults are easier.
    CHECK(mf_breakdown({500, 0.01, 0.3}) > mf_breakdown({500, 0.03, 0.3}));
    CHECK(mf_breakdown({500, 0.02, 0.5}) > mf_breakdown({500, 0.02, 0.1}));
    const double v = mf_breakdown({500, 0.02, 0.3});
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
}

TEST_CASE("breakdown matches direct evaluation of the formula") {
    // Independent re-evaluation from the solved fixed point.
    const MeanFieldSpec spec{500, 0.02, 0.3};
    const double i_tilde = solve_fixed_point(spec).i_tilde;
    const double kappa = 1.0 - spec.epsilon;
    const double isolated =
        kappa * std::pow(1.0 - spec.p * kappa * (1.0 - i_tilde),
                         static_cast<double>(spec.n - 1));
    const double expected = 1.0 - std::pow(1.0 - isolated, static_cast<double>(spec.n));
    CHECK(mf_breakdown(spec) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("extremes of the breakdown formula") {
    // Empty graph: every node is isolated unless all n nodes fail... any
    // survivor is isolated, so breakdown is certain for eps < 1.
    CHECK(mf_breakdown({50, 0.0, 0.2}) == doctest::Approx(1.0));
    // Complete graph, no faults: breakdown never happens.
    CHECK(mf_breakdown({50, 1.0, 0.0}) == doctest::Approx(0.0));
}

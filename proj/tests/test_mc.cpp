#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "kconn/ensembles.hpp"
#include "kconn/fault.hpp"
#include "kconn/mc.hpp"

using kconn::ErSpec;
using kconn::EnsembleSpec;
namespace mc = kconn::mc;

namespace {

mc::EstimateRequest er_request(int n, double p, int k, double eps, std::int64_t trials,
                               std::uint64_t seed) {
    mc::EstimateRequest req;
    req.ensemble.family = ErSpec{n, p};
    req.k = k;
    req.epsilon = eps;
    req.trials = trials;
    req.master_seed = seed;
    req.threads = 2;
    return req;
}

}  // namespace

TEST_CASE("wilson interval frozen values") {
    const auto mid = mc::wilson_interval(50, 100, 0.95);
    CHECK(mid.first == doctest::Approx(0.4038315303659957).epsilon(1e-9));
    CHECK(mid.second == doctest::Approx(0.5961684696340043).epsilon(1e-9));
    const auto zero = mc::wilson_interval(0, 100, 0.95);
    CHECK(zero.first == 0.0);
    CHECK(zero.second == doctest::Approx(0.036993498206985644).epsilon(1e-9));
    const auto full = mc::wilson_interval(100, 100, 0.95);
    CHECK(full.first == doctest::Approx(0.9630065017930143).epsilon(1e-9));
    CHECK(full.second == 1.0);
}

TEST_CASE("wilson interval basic properties") {
    for (std::int64_t s : {0, 3, 17, 50}) {
        const auto [lo, hi] = mc::wilson_interval(s, 50, 0.95);
        CHECK(lo >= 0.0);
        CHECK(hi <= 1.0);
        CHECK(lo <= static_cast<double>(s) / 50.0);
        CHECK(hi >= static_cast<double>(s) / 50.0);
        const auto [lo99, hi99] = mc::wilson_interval(s, 50, 0.99);
        CHECK(lo99 <= lo);
        CHECK(hi99 >= hi);
    }
}

TEST_CASE("request validation") {
    auto req = er_request(10, 0.5, 1, 0.3, 100, 1);
    CHECK_NOTHROW(req.validate());
    req.trials = 0;
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.trials = 100;
    req.k = 0;
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.k = 1;
    req.epsilon = 1.5;
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.epsilon = 0.3;
    req.fixed_survivors = 11;
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.fixed_survivors = 5;
    CHECK_NOTHROW(req.validate());
    // Wrong entry point for the conditional mode and vice versa.
    CHECK_THROWS_AS(mc::estimate_breakdown(req), std::invalid_argument);
    req.fixed_survivors.reset();
    CHECK_THROWS_AS(mc::estimate_breakdown_conditional(req), std::invalid_argument);
}

TEST_CASE("estimate is deterministic and thread-count invariant") {
    auto req = er_request(30, 0.15, 2, 0.2, 4000, 99);
    req.threads = 1;
    const auto one = mc::estimate_breakdown(req);
    req.threads = 3;
    const auto three = mc::estimate_breakdown(req);
    req.threads = 0;
    const auto all = mc::estimate_breakdown(req);
    CHECK(one.successes == three.successes);
    CHECK(one.successes == all.successes);
    CHECK(one.p_hat == three.p_hat);
    CHECK(one.ci_low == three.ci_low);

    auto reseeded = er_request(30, 0.15, 2, 0.2, 4000, 100);
    const auto other = mc::estimate_breakdown(reseeded);
    CHECK(one.successes != other.successes);  // overwhelmingly likely
}

TEST_CASE("estimate agrees with the exhaustive-enumeration oracle") {
    const ErSpec spec{5, 0.45};
    const int k = 1;
    const double eps = 0.3;
    const auto exact = mc::exact_breakdown_enumerate(spec, k, eps);
    const std::int64_t trials = 40'000;
    const auto est = mc::estimate_breakdown(er_request(5, 0.45, k, eps, trials, 4242));
    // 4.4-sigma band: one-in-a-hundred-thousand false alarm.
    const double sd = std::sqrt(exact.joint * (1.0 - exact.joint) / trials);
    CHECK(std::abs(est.p_hat - exact.joint) < 4.4 * sd);
    // And the Wilson interval should cover the truth at this confidence.
    CHECK(est.ci_low <= exact.joint);
    CHECK(est.ci_high >= exact.joint);
}

TEST_CASE("conditional estimate matches the exact conditional") {
    const ErSpec spec{5, 0.5};
    const int k = 1, s = 3;
    const auto exact = mc::exact_breakdown_enumerate(spec, k, 0.0);
    auto req = er_request(5, 0.5, k, 0.0, 40'000, 777);
    req.fixed_survivors = s;
    const auto est = mc::estimate_breakdown_conditional(req);
    const double truth = exact.conditional[s];
    const double sd = std::sqrt(truth * (1.0 - truth) / req.trials);
    CHECK(std::abs(est.p_hat - truth) < 4.4 * sd);
}

TEST_CASE("exact enumeration is sane") {
    CHECK_THROWS_AS(mc::exact_breakdown_enumerate(ErSpec{7, 0.5}, 1, 0.3),
                    std::invalid_argument);
    // eps = 0: the joint equals the all-survivors conditional.
    const auto clean = mc::exact_breakdown_enumerate(ErSpec{4, 0.6}, 2, 0.0);
    CHECK(clean.joint == doctest::Approx(clean.conditional[4]).epsilon(1e-14));
    // eps = 1: nothing survives; the empty graph is a breakdown by default.
    const auto doomed = mc::exact_breakdown_enumerate(ErSpec{4, 0.6}, 1, 1.0);
    CHECK(doomed.joint == doctest::Approx(1.0));
    // Conditional on s = 0 and s = 1: never k-connected under the default
    // rule (up to accumulation rounding across the 2^6 graph weights).
    CHECK(clean.conditional[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clean.conditional[1] == doctest::Approx(1.0).epsilon(1e-12));
    // p = 1 and enough survivors: complete graphs never break for k < s.
    const auto complete = mc::exact_breakdown_enumerate(ErSpec{4, 1.0}, 1, 0.0);
    CHECK(complete.joint == doctest::Approx(0.0));
}

TEST_CASE("exact joint via helper matches enumerate") {
    const ErSpec spec{5, 0.35};
    const auto full = mc::exact_breakdown_enumerate(spec, 2, 0.25);
    CHECK(mc::exact_breakdown_small(spec, 2, 0.25) == doctest::Approx(full.joint).epsilon(1e-14));
    CHECK(mc::exact_breakdown_small(spec, 2, 0.25, 4) ==
          doctest::Approx(full.conditional[4]).epsilon(1e-14));
}

TEST_CASE("binomial mixture identity holds exactly") {
    for (int n : {3, 4, 5}) {
        for (double p : {0.2, 0.5, 0.8}) {
            for (double eps : {0.0, 0.3, 0.6}) {
                for (int k : {1, 2}) {
                    const auto rep = mc::verify_mixture_identity(ErSpec{n, p}, k, eps);
                    CAPTURE(n);
                    CAPTURE(p);
                    CAPTURE(eps);
                    CAPTURE(k);
                    CHECK(rep.abs_error <= 1e-12);
                    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("quenched mode freezes the graph") {
    // eps = 0 and a quenched graph: every trial sees the same survival graph,
    // so the estimate collapses to 0 or 1.
    auto req = er_request(20, 0.3, 1, 0.0, 500, 31);
    req.quenched = true;
    const auto est = mc::estimate_breakdown(req);
    CHECK((est.p_hat == 0.0 || est.p_hat == 1.0));
}

TEST_CASE("axis names round trip") {
    using mc::SweepAxis;
    for (auto axis : {SweepAxis::edge_probability, SweepAxis::radius, SweepAxis::key_ratio,
                      SweepAxis::epsilon, SweepAxis::node_count}) {
        CHECK(mc::axis_from_name(mc::axis_name(axis)) == axis);
    }
    CHECK(mc::axis_from_name("eps") == SweepAxis::epsilon);
    CHECK_THROWS_AS(mc::axis_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("single-point sweep reproduces the plain estimate") {
    const auto req = er_request(25, 0.2, 1, 0.25, 3000, 555);
    const auto est = mc::estimate_breakdown(req);
    const auto rows = mc::sweep(req, mc::SweepAxis::edge_probability, {0.2});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].successes == est.successes);
    CHECK(rows[0].p_hat == est.p_hat);
    CHECK(rows[0].seed == est.master_seed);
}

TEST_CASE("sweep applies the axis to each point") {
    const auto req = er_request(25, 0.2, 1, 0.25, 200, 1);
    const auto eps_rows = mc::sweep(req, mc::SweepAxis::epsilon, {0.1, 0.4});
    REQUIRE(eps_rows.size() == 2);
    CHECK(eps_rows[0].epsilon == 0.1);
    CHECK(eps_rows[1].epsilon == 0.4);
    CHECK(eps_rows[0].axis == "epsilon");
    const auto n_rows = mc::sweep(req, mc::SweepAxis::node_count, {10.0, 40.0});
    CHECK(n_rows[0].n == 10);
    CHECK(n_rows[1].n == 40);
    // Radius axis on an ER base is a mismatch.
    CHECK_THROWS_AS(mc::sweep(req, mc::SweepAxis::radius, {0.1}), std::invalid_argument);
}

TEST_CASE("coupled sweep is monotone point by point") {
    const auto req = er_request(40, 0.0, 1, 0.4, 2000, 2718);
    std::vector<double> ps;
    for (int i = 1; i <= 8; ++i) ps.push_back(0.02 * i);
    const auto rows = mc::sweep(req, mc::SweepAxis::edge_probability, ps, /*coupled=*/true);
    REQUIRE(rows.size() == ps.size());
    for (std::size_t j = 1; j < rows.size(); ++j) {
        CAPTURE(j);
        CHECK(rows[j].successes <= rows[j - 1].successes);  // breakdown shrinks with p
    }
    // Rows come back in input order with the requested values.
    for (std::size_t j = 0; j < ps.size(); ++j) CHECK(rows[j].axis_value == ps[j]);
}

TEST_CASE("coupled sweep matches plain sweep statistically") {
    // Same marginal law per point; compare against the exact oracle at n = 5.
    const ErSpec spec{5, 0.0};
    auto req = er_request(5, 0.0, 1, 0.2, 30'000, 11);
    const std::vector<double> ps = {0.3, 0.7};
    const auto rows = mc::sweep(req, mc::SweepAxis::edge_probability, ps, /*coupled=*/true);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const double truth = mc::exact_breakdown_small(ErSpec{5, ps[j]}, 1, 0.2);
        const double sd = std::sqrt(truth * (1.0 - truth) / req.trials);
        CAPTURE(ps[j]);
        CHECK(std::abs(rows[j].p_hat - truth) < 4.4 * sd);
    }
}

TEST_CASE("coupled sweep rejects unsupported shapes") {
    auto req = er_request(10, 0.1, 1, 0.2, 100, 3);
    CHECK_THROWS_AS(mc::sweep(req, mc::SweepAxis::epsilon, {0.1}, true), std::invalid_argument);
    kconn::mc::EstimateRequest rgg_req = req;
    rgg_req.ensemble.family = kconn::RggSpec{10, 0.2};
    CHECK_THROWS_AS(
        mc::sweep(rgg_req, mc::SweepAxis::edge_probability, {0.1}, true),
        std::invalid_argument);
}

TEST_CASE("sweep csv schema") {
    CHECK(mc::sweep_csv_header() ==
          "axis_name,axis_value,n,k,epsilon,trials,successes,p_hat,ci_low,ci_high,seed");
    mc::SweepRow row{"p", 0.25, 100, 2, 0.5, 1000, 125, 0.125, 0.1, 0.15, 42};
    CHECK(mc::sweep_csv_row(row) == "p,0.25,100,2,0.5,1000,125,0.125,0.1,0.15,42");
}

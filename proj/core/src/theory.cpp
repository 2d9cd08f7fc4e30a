#include "kconn/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kconn/fault.hpp"

namespace kconn::theory {

namespace {

void check_threshold_args(std::int64_t n, int k, double kappa) {
    if (n < 3) throw std::invalid_argument("threshold: n must be >= 3");
    if (k < 1) throw std::invalid_argument("threshold: k must be >= 1");
    if (!(kappa > 0.0 && kappa <= 1.0))
        throw std::invalid_argument("threshold diverges: kappa must be in (0,1]");
}

}  // namespace

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        case Regime::supercritical: return "supercritical";
    }
    return "unknown";
}

double factorial(int m) {
    if (m < 0) throw std::invalid_argument("factorial: negative argument");
    return std::tgamma(static_cast<double>(m) + 1.0);
}

double er_threshold(std::int64_t n, int k, double kappa) {
    check_threshold_args(n, k, kappa);
    const double ln_n = std::log(static_cast<double>(n));
    return (ln_n + (k - 1) * std::log(ln_n)) / (kappa * static_cast<double>(n));
}

double er_limit_at_threshold(int k, double kappa, LimitVariant variant) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must be in (0,1]");
    const double fact = factorial(k - 1);
    const double exponent =
        variant == LimitVariant::paper ? std::pow(kappa, 1.0 / fact) : kappa / fact;
    return 1.0 - std::exp(-exponent);
}

RegimeResult er_regime(double p, std::int64_t n, int k, double kappa) {
    check_threshold_args(n, k, kappa);
    const double ln_n = std::log(static_cast<double>(n));
    const double offset = kappa * static_cast<double>(n) * p - ln_n - (k - 1) * std::log(ln_n);
    Regime regime = offset > 0   ? Regime::supercritical
                    : offset < 0 ? Regime::subcritical
                                 : Regime::critical;
    return {regime, offset};
}

std::pair<double, double> bollobas_min_degree_limit(int m, double c, LimitVariant variant) {
    if (m < 0) throw std::invalid_argument("m must be non-negative");
    const double inner = variant == LimitVariant::paper ? std::exp(-c / factorial(m))
                                                        : std::exp(-c) / factorial(m);
    const double survive = std::exp(-inner);
    return {1.0 - survive, survive};
}

double rig_threshold(std::int64_t n, int k, double kappa) { return er_threshold(n, k, kappa); }

RigConditions rig_conditions_check(double mean_key, double var_key, std::int64_t n) {
    if (!(mean_key > 0.0)) throw std::invalid_argument("mean key size must be positive");
    if (var_key < 0.0) throw std::invalid_argument("key variance must be non-negative");
    const double ln_n = std::log(static_cast<double>(n));
    RigConditions out{};
    out.mean_ratio = mean_key / std::sqrt(ln_n);
    out.var_ratio = var_key * static_cast<double>(n) * ln_n * ln_n / (mean_key * mean_key);
    out.mean_pass = out.mean_ratio >= 1.0;
    out.var_pass = out.var_ratio <= 1.0;
    return out;
}

double zhao_limit(double alpha_star, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (std::isinf(alpha_star)) return alpha_star > 0 ? 1.0 : 0.0;
    return std::exp(-std::exp(-alpha_star) / factorial(k - 1));
}

double penrose_limit(double c) {
    if (std::isinf(c)) return c > 0 ? 1.0 : 0.0;
    return std::exp(-std::exp(-c));
}

double wan_xi(int k, double c) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k == 1) {
        const double root = std::sqrt(std::exp(-c) + std::acos(-1.0) / 4.0);
        const double arg = root - std::sqrt(std::acos(-1.0)) / 2.0;
        if (!(arg > 0.0)) throw std::domain_error("wan_xi: log argument not positive");
        return -2.0 * std::log(arg);
    }
    return 2.0 * std::log(std::sqrt(std::acos(-1.0)) / (std::pow(2.0, k - 1) * factorial(k))) +
           2.0 * c;
}

double wan_radius(std::int64_t n, int k, double c) {
    if (n < 3) throw std::invalid_argument("n must be >= 3");
    const double pi = std::acos(-1.0);
    const double ln_n = std::log(static_cast<double>(n));
    return std::sqrt((ln_n + (2 * k - 1) * std::log(ln_n) + wan_xi(k, c)) /
                     (pi * static_cast<double>(n)));
}

double rgg_xi(int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k <= 2) return 0.0;
    return 2.0 * std::log(std::sqrt(std::acos(-1.0)) / (std::pow(2.0, k - 2) * factorial(k - 1)));
}

double rgg_threshold_radius(std::int64_t n, int k, double kappa) {
    check_threshold_args(n, k, kappa);
    const double pi = std::acos(-1.0);
    const double ln_n = std::log(static_cast<double>(n));
    const double lnln_term = std::max(2 * k - 3, 0) * std::log(ln_n);
    return std::sqrt((ln_n + lnln_term + rgg_xi(k)) / (kappa * pi * static_cast<double>(n)));
}

double rgg_limit_at_threshold(int k, double kappa) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must be in (0,1]");
    if (k == 1) return 1.0 - std::exp(-kappa);
    if (k == 2) return 1.0 - std::exp(-std::sqrt(kappa * (kappa + std::acos(-1.0))));
    return 1.0 - std::exp(-std::sqrt(kappa));
}

double TypicalSetSpec::default_delta(std::int64_t n) {
    return std::pow(static_cast<double>(n), -1.0 / 3.0);
}

void TypicalSetSpec::validate() const {
    if (n < 1) throw std::invalid_argument("typical set: n must be >= 1");
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw std::invalid_argument("typical set: kappa must be in [0,1]");
    if (!(delta > 0.0)) throw std::invalid_argument("typical set: delta must be positive");
}

std::pair<std::int64_t, std::int64_t> typical_range(const TypicalSetSpec& spec) {
    spec.validate();
    const double nd = static_cast<double>(spec.n);
    auto s_minus = static_cast<std::int64_t>(std::ceil((spec.kappa - spec.delta) * nd));
    auto s_plus = static_cast<std::int64_t>(std::floor((spec.kappa + spec.delta) * nd));
    s_minus = std::max<std::int64_t>(s_minus, 0);
    s_plus = std::min(s_plus, spec.n);
    if (s_minus > s_plus) throw std::invalid_argument("typical range is empty at this (n, delta)");
    return {s_minus, s_plus};
}

TypicalityMass typicality_mass(const TypicalSetSpec& spec) {
    const auto [s_minus, s_plus] = typical_range(spec);
    double mass = 0.0;
    for (std::int64_t s = s_minus; s <= s_plus; ++s)
        mass += binomial_pmf(static_cast<int>(s), static_cast<int>(spec.n), spec.kappa);
    mass = std::min(mass, 1.0);
    return {mass, 1.0 - 1.0 / (2.0 * static_cast<double>(spec.n) * spec.delta)};
}

std::pair<double, double> lemma1_bounds(const TypicalSetSpec& spec,
                                        const std::map<std::int64_t, double>& conditional_probs) {
    const auto [s_minus, s_plus] = typical_range(spec);
    double min_p = 1.0, max_p = 0.0;
    for (std::int64_t s = s_minus; s <= s_plus; ++s) {
        const auto it = conditional_probs.find(s);
        if (it == conditional_probs.end())
            throw std::invalid_argument("lemma1_bounds: missing conditional probability");
        if (!(it->second >= 0.0 && it->second <= 1.0))
            throw std::invalid_argument("lemma1_bounds: probability out of [0,1]");
        min_p = std::min(min_p, it->second);
        max_p = std::max(max_p, it->second);
    }
    const double slack = 1.0 / (2.0 * static_cast<double>(spec.n) * spec.delta);
    const double lower = std::clamp((1.0 - slack) * min_p, 0.0, 1.0);
    const double upper = std::clamp(slack + max_p, 0.0, 1.0);
    return {lower, upper};
}

TheoryPrediction predict(const std::string& family, std::int64_t n, int k, double epsilon,
                         std::optional<double> parameter_value) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("predict: epsilon must be in [0,1)");
    const double kappa = 1.0 - epsilon;
    TheoryPrediction out;
    out.family = family;
    out.n = n;
    out.k = k;
    out.epsilon = epsilon;
    if (family == "er" || family == "rig") {
        out.threshold = er_threshold(n, k, kappa);
        out.limit_paper = er_limit_at_threshold(k, kappa, LimitVariant::paper);
        out.limit_standard = er_limit_at_threshold(k, kappa, LimitVariant::standard);
        if (parameter_value) out.regime = er_regime(*parameter_value, n, k, kappa);
    } else if (family == "rgg") {
        out.threshold = rgg_threshold_radius(n, k, kappa);
        out.limit_paper = rgg_limit_at_threshold(k, kappa);
        out.limit_standard = out.limit_paper;
        out.xi = rgg_xi(k);
        if (parameter_value) {
            // Signed offset in the squared-radius scale, same sign convention
            // as the ER classifier.
            const double ln_n = std::log(static_cast<double>(n));
            const double pi = std::acos(-1.0);
            const double offset = kappa * pi * static_cast<double>(n) * (*parameter_value) *
                                      (*parameter_value) -
                                  ln_n - std::max(2 * k - 3, 0) * std::log(ln_n) - rgg_xi(k);
            Regime regime = offset > 0   ? Regime::supercritical
                            : offset < 0 ? Regime::subcritical
                                         : Regime::critical;
            out.regime = RegimeResult{regime, offset};
        }
    } else {
        throw std::invalid_argument("predict: unsupported family " + family);
    }
    return out;
}

}  // namespace kconn::theory

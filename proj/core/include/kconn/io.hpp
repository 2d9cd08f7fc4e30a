#pragma once

#include <string>

namespace kconn {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Quantile of the standard normal distribution (bisection on erfc).
double normal_quantile(double p);

}  // namespace kconn

#pragma once

namespace rsn::special {

/// Gamma function. Lanczos approximation on x >= 1/2 (relative error below
/// 1e-13 on (0,10]), reflection formula below. Throws std::domain_error at
/// the poles 0, -1, -2, ...
double gamma(double x);

/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

/// True when x is a pole of the gamma function.
bool is_gamma_pole(double x);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// P(K > lambda) for the Kolmogorov distribution K = sup |Brownian bridge|.
double kolmogorov_survival(double lambda);

}  // namespace rsn::special

#pragma once

namespace hilfer {

/// Largest argument for which gamma() is finite in binary64.
inline constexpr double kGammaOverflowThreshold = 171.62437695630272;

/// Euler gamma function, Lanczos approximation (g = 7, 9 terms) with
/// reflection below 1/2. Throws DomainError at nonpositive integers and
/// OverflowError above kGammaOverflowThreshold.
double gamma(double x);

/// log(Gamma(x)) for x > 0.
double log_gamma(double x);

struct MlParams {
    double alpha;
    double beta_param;
};

struct MlOptions {
    double tol = 1e-14;
    int max_terms = 10000;
};

/// Largest |z|^(1/alpha) accepted for negative z. The alternating series
/// loses about exp(|z|^(1/alpha)) ulps to cancellation.
inline constexpr double kMlNegativeCap = 8.0;

/// Largest z^(1/alpha) accepted for positive z; beyond it E overflows.
inline constexpr double kMlPositiveCap = 700.0;

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) by its power
/// series. Summation stops once three consecutive terms fall below
/// opt.tol in magnitude.
double mittag_leffler(MlParams p, double z, MlOptions opt = {});

} // namespace hilfer

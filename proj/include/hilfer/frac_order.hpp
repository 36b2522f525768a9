#pragma once

namespace hilfer {

/// Order alpha in (0,1) and type beta in [0,1] of a Hilfer derivative, with
/// the composite exponent gamma = alpha + beta (1 - alpha).
struct FracOrder {
    double alpha;
    double beta_type;
    double gamma_w;

    /// Validates the ranges and computes gamma_w.
    static FracOrder make(double alpha, double beta_type);
};

} // namespace hilfer

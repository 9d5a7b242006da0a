#pragma once

namespace urn {

/// Standard normal density.
double normal_pdf(double z) noexcept;

/// Standard normal CDF, Phi(z) = erfc(-z / sqrt 2) / 2. The complementary
/// error function keeps both tails accurate to a few ulp, so the absolute
/// error is below 1e-15 everywhere.
double normal_cdf(double z) noexcept;

}  // namespace urn

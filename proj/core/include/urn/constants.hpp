#pragma once

namespace urn::constants {

// Size-bias Kolmogorov bound
//   a B / sigma + (mu / sigma^2) (b B^2 / sigma + c B^3 / sigma^2 + d Delta)
// valid when B <= sigma^{3/2} / sqrt(e mu).
inline constexpr double kSizeBiasLinear = 0.4;
inline constexpr double kSizeBiasQuadratic = 64.0;
inline constexpr double kSizeBiasCubic = 4.0;
inline constexpr double kSizeBiasDelta = 23.0;
inline constexpr double kSizeBiasPrecondition = 6.0;

// Hard increment bounds of the two couplers.
inline constexpr double kUniformIncrementBound = 2.0;
inline constexpr double kGeneralIncrementBound = 3.0;

// Uniform bound, the size-bias bound at B = 2.
inline constexpr double kUniformLinear = 0.8;
inline constexpr double kUniformQuadratic = 256.0;
inline constexpr double kUniformCubic = 32.0;
inline constexpr double kUniformPreconditionRatio = 24.0;

static_assert(kSizeBiasLinear * kUniformIncrementBound == kUniformLinear);
static_assert(kSizeBiasQuadratic * kUniformIncrementBound * kUniformIncrementBound ==
              kUniformQuadratic);
static_assert(kSizeBiasCubic * kUniformIncrementBound * kUniformIncrementBound *
                  kUniformIncrementBound ==
              kUniformCubic);
static_assert(kSizeBiasPrecondition * kUniformIncrementBound * kUniformIncrementBound ==
              kUniformPreconditionRatio);

// Uniform conditional-variance bound
//   16/n + 4/(n(n-1)) + (24/m)(2 + n/(m-3) + n/m).
inline constexpr double kEtaInverseN = 16.0;
inline constexpr double kEtaInversePairs = 4.0;
inline constexpr double kEtaInverseM = 24.0;
inline constexpr double kEtaShift = 3.0;

// Asymptotic uniform rate constant in alpha = lim n/m
//   0.8/g + 256 (1 - e^-alpha)/g^3 + 92 ((1 - e^-alpha)/g^2) sqrt(1 + 3 alpha (1 + alpha)).
inline constexpr double kRateLinear = 0.8;
inline constexpr double kRateCubic = 256.0;
inline constexpr double kRateDelta = 92.0;
static_assert(kRateDelta == kSizeBiasDelta * 4.0);
/// Published rounding of the alpha = 1 rate constant. Independent evaluation
/// gives about 2106.36; kept as metadata only.
inline constexpr double kPublishedRateConstantAlphaOne = 2236.0;

// General bound: 8165 gamma^2 e^{2.1 gamma} (577 + 23 C(gamma)) / sigma, with
// C(gamma) = 10 sqrt(82 g^7 + 82 g^6 + 80 g^5 + 47 g^4 + 12 g^3 + 12 g^2).
inline constexpr double kGeneralScale = 8165.0;
inline constexpr double kGeneralExponent = 2.1;
inline constexpr double kGeneralOffset = 577.0;
inline constexpr double kGeneralDelta = 23.0;
inline constexpr double kDeltaConstantScale = 10.0;
inline constexpr double kDeltaConstantCoefficients[] = {12.0, 12.0, 47.0, 80.0, 82.0, 82.0};  // gamma^2..gamma^7
// Before rounding: 1.2 + scale (576 + 108/sigma + 23 C) with 1.2 = 0.4 * 3,
// 576 = 64 * 9 and 108 = 4 * 27.
inline constexpr double kGeneralLinear = kSizeBiasLinear * kGeneralIncrementBound;
inline constexpr double kGeneralQuadratic = 576.0;
inline constexpr double kGeneralCubic = 108.0;
static_assert(kGeneralLinear > 1.2 - 1e-15 && kGeneralLinear < 1.2 + 1e-15);
static_assert(kSizeBiasQuadratic * kGeneralIncrementBound * kGeneralIncrementBound ==
              kGeneralQuadratic);
static_assert(kSizeBiasCubic * kGeneralIncrementBound * kGeneralIncrementBound *
                  kGeneralIncrementBound ==
              kGeneralCubic);
static_assert(kGeneralOffset == kGeneralQuadratic + 1.0);

// Regularity conditions of the general bounds.
inline constexpr double kMaxProbability = 1.0 / 11.0;
inline constexpr double kBallThresholdScale = 83.0;
inline constexpr double kBallThresholdExponent = 1.05;
static_assert(2.0 * kBallThresholdExponent == kGeneralExponent);

// Variance bounds: Var Y <= 8 n^2 sum p^2 always, and
// Var Y >= n^2 sum p^2 / (7776 gamma^2 e^{2.1 gamma}) under the conditions above.
inline constexpr double kVarianceUpper = 8.0;
inline constexpr double kVarianceLowerDivisor = 7776.0;
inline constexpr double kVarianceLowerExponent = 2.1;

// Universal Kolmogorov lower bound min(1/6, (8 pi e)^{-1/2} / sigma).
inline constexpr double kLowerBoundCap = 1.0 / 6.0;
inline constexpr double kLowerBoundScale = 8.0;

// Covariance inequalities.
inline constexpr double kUniformPairScale = 1.0;
inline constexpr double kUniformQuadScale = 3.0;
inline constexpr double kGeneralPairScale = 3.0;
inline constexpr double kGeneralQuadScale = 9.0;

}  // namespace urn::constants

#pragma once

// Pinned thresholds for every asserted contract. The experiment runner and
// the acceptance suite both read these; configs cannot loosen them.
namespace taupsd::tol {

inline constexpr double kHsIdentityRel = 0.01;
inline constexpr double kHsTauSpread = 0.005;
inline constexpr double kRoundoffFloor = 1e-12;
inline constexpr double kFactorizationResidual = 1e-8;
inline constexpr double kKernelHsRel = 0.01;
inline constexpr double kCordesDrift = 0.05;
inline constexpr double kContinuitySlope = 0.9;
inline constexpr double kPartitionCompleteness = 1e-6;
inline constexpr double kReconstruction = 1e-6;
inline constexpr double kFiniteDifference = 1e-6;
inline constexpr double kBandConstantDrift = 0.05;
inline constexpr double kDecayDrift = 0.10;
inline constexpr double kL1Cauchy = 0.01;
inline constexpr double kBesselPointwise = 1e-4;
inline constexpr double kBesselRoundTrip = 1e-8;
inline constexpr double kFamilyGrowth = 2.0;
inline constexpr double kRankOneOracle = 1e-8;
inline constexpr double kDftOraclePerPoint = 1e-12;
inline constexpr double kFftRoundTrip = 1e-10;
inline constexpr double kFrobeniusConsistency = 1e-10;
inline constexpr double kQuantizeConsistency = 1e-10;
inline constexpr double kSchattenOrder = 1e-12;
inline constexpr double kScalingSlopeMargin = 0.1;
inline constexpr double kSobolevRatioLow = 0.1;
inline constexpr double kSobolevRatioHigh = 10.0;
inline constexpr double kSobolevDrift = 0.10;
inline constexpr int kMatrixDimensionCap = 4096;

}  // namespace taupsd::tol

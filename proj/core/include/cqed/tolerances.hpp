#pragma once

// Centralized numeric tolerances. Algebraic identities (Hermiticity,
// commutators, norms) are held to kAlgebraic; spectral positivity checks
// get the looser kPositivity.
namespace cqed::tol {

inline constexpr double kAlgebraic = 1e-10;
inline constexpr double kPositivity = 1e-8;
inline constexpr double kUnitaryNormDrift = 1e-9;
inline constexpr double kLindbladTraceDrift = 1e-7;
inline constexpr double kTrajectorySpinNorm = 1e-6;

}  // namespace cqed::tol

#pragma once

#include <cstddef>

// Numerical error budget shared by every module.
namespace otto::tol {

// Hermiticity / trace / parameter checks on inputs.
inline constexpr double kValidation = 1e-10;
// Equality of derived quantities (reconstructions, conservation laws).
inline constexpr double kEquality = 1e-12;
// Eigenvalues in [-kPsdClamp, 0) are numerical noise and clamp to 0;
// anything more negative is a genuine positivity violation.
inline constexpr double kPsdClamp = 1e-10;
// Cyclic Jacobi stops once the off-diagonal Frobenius norm falls below this.
inline constexpr double kJacobiOffNorm = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
// Largest Hilbert-space dimension the dense kernel accepts.
inline constexpr std::size_t kMaxDim = 16;
// Denominators at or below this make an advantage ratio undefined.
inline constexpr double kRatioFloor = 1e-12;

}  // namespace otto::tol

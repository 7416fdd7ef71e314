#pragma once

#include <string>

#include "otto/smallmat.hpp"

namespace otto {

// Coefficients of rho = I/2 + px sigma^x + py sigma^y + pz sigma^z.
// Valid states satisfy |P| <= 1/2.
struct PolarizationVector {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;

    double norm() const noexcept;
    bool operator==(const PolarizationVector&) const = default;
};

// Throws ValidationError when |P| exceeds 1/2 (plus the equality tolerance).
void validate_bloch_ball(const PolarizationVector& p, const std::string& what);

// A Hermitian, trace-one, positive semidefinite matrix of dimension 2 or 4.
class DensityOperator {
public:
    // Validates Hermiticity, unit trace and positivity; throws ValidationError.
    explicit DensityOperator(ComplexMatrix matrix);

    // For outputs of channels that preserve validity by construction
    // (unitary conjugation, replacement, dephasing). Checks only the dimension.
    static DensityOperator assume_valid(ComplexMatrix matrix);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return matrix_.dim(); }

    bool operator==(const DensityOperator&) const = default;

private:
    struct Unchecked {};
    DensityOperator(ComplexMatrix matrix, Unchecked);

    ComplexMatrix matrix_;
};

struct StateDefects {
    double trace_error = 0.0;       // |Tr rho - 1|
    double hermiticity = 0.0;       // max |rho_ij - conj(rho_ji)|
    double min_eigenvalue = 0.0;
};

StateDefects state_defects(const ComplexMatrix& rho);

}  // namespace otto

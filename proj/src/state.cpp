#include "otto/state.hpp"

#include <cmath>
#include <limits>

#include "otto/errors.hpp"
#include "otto/tolerances.hpp"

namespace otto {

double PolarizationVector::norm() const noexcept { return std::sqrt(px * px + py * py + pz * pz); }

void validate_bloch_ball(const PolarizationVector& p, const std::string& what) {
    if (!std::isfinite(p.px) || !std::isfinite(p.py) || !std::isfinite(p.pz)) {
        throw ValidationError(what + ": polarization components must be finite");
    }
    if (p.norm() > 0.5 + tol::kEquality) {
        throw ValidationError(what + ": polarization |P| = " + std::to_string(p.norm()) +
                              " lies outside the Bloch ball |P| <= 1/2");
    }
}

StateDefects state_defects(const ComplexMatrix& rho) {
    StateDefects d;
    d.trace_error = std::abs(trace(rho) - 1.0);
    d.hermiticity = hermiticity_defect(rho);
    d.min_eigenvalue = d.hermiticity > tol::kValidation ? -std::numeric_limits<double>::infinity() : hermitian_eigenvalues(rho).front();
    return d;
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.dim() != 2 && matrix_.dim() != 4) {
        throw DimensionError("DensityOperator: dimension must be 2 or 4, got " + std::to_string(matrix_.dim()));
    }
    const auto d = state_defects(matrix_);
    if (d.hermiticity > tol::kValidation) {
        throw ValidationError("DensityOperator: not Hermitian (max asymmetry " + std::to_string(d.hermiticity) + ")");
    }
    if (d.trace_error > tol::kValidation) {
        throw ValidationError("DensityOperator: trace differs from 1 by " + std::to_string(d.trace_error));
    }
    if (d.min_eigenvalue < -tol::kPsdClamp) {
        throw ValidationError("DensityOperator: not positive semidefinite (min eigenvalue " +
                              std::to_string(d.min_eigenvalue) + ")");
    }
}

DensityOperator::DensityOperator(ComplexMatrix matrix, Unchecked) : matrix_(std::move(matrix)) {
    if (matrix_.dim() != 2 && matrix_.dim() != 4) {
        throw DimensionError("DensityOperator: dimension must be 2 or 4, got " + std::to_string(matrix_.dim()));
    }
}

DensityOperator DensityOperator::assume_valid(ComplexMatrix matrix) {
    return DensityOperator(std::move(matrix), Unchecked{});
}

}  // namespace otto

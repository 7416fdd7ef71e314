#pragma once

#include <cmath>
#include <random>

#include "otto/smallmat.hpp"
#include "otto/state.hpp"

// Random states and operators for property checks.

namespace otto::sampling {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = cplx{normal(rng), normal(rng)};
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
    const auto g = random_matrix(rng, dim);
    return 0.5 * (g + dagger(g));
}

// G G^dagger / Tr, optionally rank-deficient.
inline DensityOperator random_density(std::mt19937_64& rng, std::size_t dim, std::size_t rank = 0) {
    auto g = random_matrix(rng, dim);
    if (rank > 0) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = rank; j < dim; ++j) g(i, j) = 0.0;
        }
    }
    auto rho = g * dagger(g);
    rho *= 1.0 / trace(rho).real();
    return DensityOperator(0.5 * (rho + dagger(rho)));
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t dim) {
    return unitary_propagator(random_hermitian(rng, dim), 1.0);
}

inline PolarizationVector random_bloch(std::mt19937_64& rng, double radius = 0.5) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double x = normal(rng), y = normal(rng), z = normal(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    const double r = radius * std::cbrt(unit(rng));
    return {r * x / n, r * y / n, r * z / n};
}

}  // namespace otto::sampling

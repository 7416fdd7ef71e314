#pragma once

// Figures of merit for the battery and the joint medium-battery state.
//
// Energies are returned as omega * <sigma^z> / 2, i.e. in units of hbar times
// the frequency unit of `omega`; pass omega = 1 for units of hbar*omega.
// Entropies are in nats.

#include <array>

#include "otto/state.hpp"

namespace otto {

struct ErgotropyReport {
    double total = 0.0;
    double incoherent = 0.0;  // ergotropy of the sigma^z-dephased state
    double coherent = 0.0;    // total - incoherent
    DensityOperator passive_state = DensityOperator::assume_valid(ComplexMatrix::identity(2) * 0.5);
};

struct CorrelatorSet {
    std::array<double, 3> medium{};   // <sigma_M^x>, <sigma_M^y>, <sigma_M^z>
    std::array<double, 3> battery{};  // <sigma_B^x>, <sigma_B^y>, <sigma_B^z>
    std::array<double, 3> joint{};    // <sigma^x sigma^x>, <sigma^y sigma^y>, <sigma^z sigma^z>
};

// p_j = Tr[rho sigma^j] / 2.
PolarizationVector polarization_vector(const DensityOperator& rho);

// Tr[rho (omega/2) sigma^z] for a qubit.
double mean_energy(const DensityOperator& rho, double omega = 1.0);

// Expectation value Tr[rho op] (real part; op assumed Hermitian).
double expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

double von_neumann_entropy(const DensityOperator& rho);

// Diagonal part in the computational (sigma^z) basis.
DensityOperator dephased(const DensityOperator& rho);

// S(diag(rho)) - S(rho).
double relative_entropy_of_coherence(const DensityOperator& rho);

// Diagonal state with the larger eigenvalue of rho on the lower level of
// (omega/2) sigma^z.
DensityOperator passive_state(const DensityOperator& rho, double omega = 1.0);

ErgotropyReport ergotropy(const DensityOperator& rho, double omega = 1.0);

CorrelatorSet pauli_correlators(const DensityOperator& joint);

// Wootters concurrence, evaluated through the Hermitian PSD matrix
// sqrt(rho) rho~ sqrt(rho) with rho~ = (sy x sy) rho* (sy x sy).
double concurrence(const DensityOperator& joint);

}  // namespace otto

#pragma once

// Two-qubit Otto engine: a spin-1/2 working medium charging a spin-1/2
// battery through flip-flop power strokes between hot and cold resets.
//
// Level convention. Bath populations are listed as (p0, p1) for (|0>, |1>),
// with |0> the sigma^z = +1 level. The reservoirs polarize the medium towards
// |0>, and the flip-flop stroke hands that polarization to the battery as
// energy. In this ordering the experimental bath states read
// hot (0.515, 0.485) and cold (0.97, 0.03); the ideal cold bath is (1, 0).
//
// Energies are dimensionless, in units of hbar*omega_B (battery) or
// hbar*omega_M (medium).

#include <optional>
#include <utility>

#include "otto/diagnostics.hpp"
#include "otto/state.hpp"

namespace otto {

struct Populations {
    double p0 = 0.5;  // population of |0> (sigma^z = +1)
    double p1 = 0.5;  // population of |1>

    bool operator==(const Populations&) const = default;
};

struct NoiseConfig {
    // Multiplier on battery sigma^z-basis coherences after each medium reset.
    double battery_dephasing_per_reset = 1.0;
    // Multiplier on battery coherences once per cycle.
    double battery_t2_per_cycle = 1.0;

    bool operator==(const NoiseConfig&) const = default;
};

struct EngineConfig {
    double omega_m = 1.0;
    double omega_b = 1.0;
    double theta = 0.7853981633974483;      // expansion stroke angle g*t
    std::optional<double> theta_compression; // defaults to theta
    double p_mx = 0.49;
    Populations hot_populations{0.515, 0.485};
    Populations cold_populations{0.97, 0.03};
    PolarizationVector battery_init{};
    NoiseConfig noise{};
    int cycles = 1;

    double compression_angle() const noexcept { return theta_compression.value_or(theta); }

    // Throws ValidationError naming the violated invariant.
    void validate() const;

    bool operator==(const EngineConfig&) const = default;
};

// Hot bath reset with infinite-temperature populations and pure cold bath:
// the regime of the closed-form single-cycle work.
EngineConfig ideal_config(double theta, double p_mx, PolarizationVector battery);

struct WorkBreakdown {
    double total = 0.0;
    double classical = 0.0;
    double quantum = 0.0;
    // False when the config lies outside the closed form's regime
    // (hot (1/2, 1/2), cold (1, 0), equal stroke angles).
    bool regime_valid = true;
};

// Everything recorded at the end of a cycle.
struct CycleRecord {
    int cycle_index = 1;
    double cycle_work = 0.0;
    double cumulative_work = 0.0;
    PolarizationVector battery_polarization{};
    ErgotropyReport ergotropy{};
    double coherence_rel_entropy = 0.0;
    // Measured right after the expansion stroke.
    double concurrence_post_stroke = 0.0;
    CorrelatorSet correlators{};
    // Polar angle of the hot medium Bloch vector; the coherence injection
    // that produces it is booked at zero energy cost.
    double injection_angle = 0.0;
    // Medium energy after the compression stroke, units of hbar*omega_M.
    double medium_energy = 0.0;
};

// diag(p0, p1) + p_mx sigma^x. Requires |p_mx| <= sqrt(p0 p1).
DensityOperator prepare_medium_hot(double p_mx, Populations hot);

// Incoherent bath state diag(p0, p1).
DensityOperator prepare_bath_state(Populations populations);

// I/2 + P . sigma; requires |P| <= 1/2.
DensityOperator prepare_battery(const PolarizationVector& p);

// Interaction Hamiltonian g(sM+ sB- + sM- sB+) with unnormalized sigma^pm.
// Its matrix element on {|01>, |10>} is kFlipFlopMatrixElement * g.
ComplexMatrix flip_flop_hamiltonian(double g);
inline constexpr double kFlipFlopMatrixElement = 4.0;

// exp(-i H_I t) with theta = kFlipFlopMatrixElement * g * t: identity on
// |00>, |11> and [[cos, -i sin], [-i sin, cos]] on {|01>, |10>}.
ComplexMatrix flip_flop_propagator(double theta);

DensityOperator power_stroke(const DensityOperator& joint, double theta);

// fresh (x) Tr_M(joint): replaces the medium, keeps the battery marginal,
// discards medium-battery correlations.
DensityOperator reset_medium(const DensityOperator& joint, const DensityOperator& fresh);

// Closed-form work of the first cycle. With Bloch components 2P,
//   W / (hbar omega_B / 2) = (2P_M^x)(2P_B^y) sin cos^3 + (2P_B^z)(cos^4 - 1) + sin^2,
// so quantum = 2 P_M^x P_B^y sin cos^3 and
// classical = P_B^z (cos^4 - 1) + sin^2 / 2 in units of hbar omega_B.
WorkBreakdown closed_form_work(const EngineConfig& config);

// Hot preparation -> expansion stroke -> cold reset -> compression stroke on
// rho_M (x) rho_B. Noise multipliers are not applied.
std::pair<CycleRecord, DensityOperator> run_single_cycle(const EngineConfig& config);

// Diagnostics of a cycle given the joint states around it.
CycleRecord make_record(int cycle_index, const DensityOperator& battery_before, const DensityOperator& post_stroke,
                        const DensityOperator& final_joint, const EngineConfig& config, double cumulative_before);

}  // namespace otto

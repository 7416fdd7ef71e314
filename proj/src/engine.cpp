#include "otto/engine.hpp"

#include <cmath>
#include <string>

#include "otto/errors.hpp"
#include "otto/tolerances.hpp"

namespace otto {

namespace {

void validate_populations(const Populations& p, const std::string& what) {
    if (!std::isfinite(p.p0) || !std::isfinite(p.p1) || p.p0 < 0.0 || p.p1 < 0.0 || p.p0 > 1.0 || p.p1 > 1.0) {
        throw ValidationError(what + ": populations must lie in [0, 1]");
    }
    if (std::abs(p.p0 + p.p1 - 1.0) > tol::kValidation) {
        throw ValidationError(what + ": populations must sum to 1 (got " + std::to_string(p.p0 + p.p1) + ")");
    }
}

void validate_unit_interval(double value, const std::string& what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError(what + " must lie in [0, 1] (got " + std::to_string(value) + ")");
    }
}

double coherence_bound(const Populations& hot) { return std::sqrt(hot.p0 * hot.p1); }

bool near(double a, double b) { return std::abs(a - b) <= tol::kEquality; }

}  // namespace

void EngineConfig::validate() const {
    if (!std::isfinite(omega_m) || !std::isfinite(omega_b) || omega_b == 0.0) {
        throw ValidationError("omega_m/omega_b must be finite and omega_b nonzero");
    }
    if (!std::isfinite(theta) || !std::isfinite(compression_angle())) {
        throw ValidationError("stroke angles must be finite");
    }
    validate_populations(hot_populations, "hot_populations");
    validate_populations(cold_populations, "cold_populations");
    if (!std::isfinite(p_mx) || std::abs(p_mx) > coherence_bound(hot_populations) + tol::kEquality) {
        throw ValidationError("p_mx = " + std::to_string(p_mx) + " violates positivity bound |p_mx| <= sqrt(p0*p1) = " +
                              std::to_string(coherence_bound(hot_populations)));
    }
    validate_bloch_ball(battery_init, "battery_init");
    validate_unit_interval(noise.battery_dephasing_per_reset, "battery_dephasing_per_reset");
    validate_unit_interval(noise.battery_t2_per_cycle, "battery_t2_per_cycle");
    if (cycles < 1) throw ValidationError("cycles must be a positive integer");
}

EngineConfig ideal_config(double theta, double p_mx, PolarizationVector battery) {
    EngineConfig c;
    c.theta = theta;
    c.p_mx = p_mx;
    c.hot_populations = {0.5, 0.5};
    c.cold_populations = {1.0, 0.0};
    c.battery_init = battery;
    c.cycles = 1;
    return c;
}

DensityOperator prepare_medium_hot(double p_mx, Populations hot) {
    validate_populations(hot, "hot_populations");
    const double bound = coherence_bound(hot);
    if (!std::isfinite(p_mx) || std::abs(p_mx) > bound + tol::kEquality) {
        throw ValidationError("prepare_medium_hot: |p_mx| = " + std::to_string(std::abs(p_mx)) +
                              " exceeds the positivity bound sqrt(p0*p1) = " + std::to_string(bound));
    }
    return DensityOperator::assume_valid({{hot.p0, p_mx}, {p_mx, hot.p1}});
}

DensityOperator prepare_bath_state(Populations populations) { return prepare_medium_hot(0.0, populations); }

DensityOperator prepare_battery(const PolarizationVector& p) {
    validate_bloch_ball(p, "prepare_battery");
    const cplx i{0.0, 1.0};
    return DensityOperator::assume_valid({{0.5 + p.pz, p.px - i * p.py}, {p.px + i * p.py, 0.5 - p.pz}});
}

ComplexMatrix flip_flop_hamiltonian(double g) {
    const auto plus = pauli(PauliAxis::plus);
    const auto minus = pauli(PauliAxis::minus);
    return g * (kron(plus, minus) + kron(minus, plus));
}

ComplexMatrix flip_flop_propagator(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx mis{0.0, -s};
    auto u = ComplexMatrix::identity(4);
    u(1, 1) = c;
    u(1, 2) = mis;
    u(2, 1) = mis;
    u(2, 2) = c;
    return u;
}

DensityOperator power_stroke(const DensityOperator& joint, double theta) {
    if (joint.dim() != 4) throw DimensionError("power_stroke: expected a two-qubit state");
    const auto u = flip_flop_propagator(theta);
    return DensityOperator::assume_valid(u * joint.matrix() * dagger(u));
}

DensityOperator reset_medium(const DensityOperator& joint, const DensityOperator& fresh) {
    if (joint.dim() != 4 || fresh.dim() != 2) {
        throw DimensionError("reset_medium: expected a two-qubit joint state and a qubit bath state");
    }
    return DensityOperator::assume_valid(kron(fresh.matrix(), partial_trace(joint.matrix(), Subsystem::battery)));
}

WorkBreakdown closed_form_work(const EngineConfig& config) {
    config.validate();
    const double s = std::sin(config.theta);
    const double c = std::cos(config.theta);
    const double c2 = c * c;
    const auto& b = config.battery_init;

    WorkBreakdown w;
    w.quantum = 2.0 * config.p_mx * b.py * s * c2 * c;
    w.classical = b.pz * (c2 * c2 - 1.0) + 0.5 * s * s;
    w.total = w.classical + w.quantum;
    w.regime_valid = near(config.hot_populations.p0, 0.5) && near(config.hot_populations.p1, 0.5) &&
                     near(config.cold_populations.p0, 1.0) && near(config.cold_populations.p1, 0.0) &&
                     config.compression_angle() == config.theta;
    return w;
}

CycleRecord make_record(int cycle_index, const DensityOperator& battery_before, const DensityOperator& post_stroke,
                        const DensityOperator& final_joint, const EngineConfig& config, double cumulative_before) {
    const auto battery =
        DensityOperator::assume_valid(partial_trace(final_joint.matrix(), Subsystem::battery));
    const auto medium = DensityOperator::assume_valid(partial_trace(final_joint.matrix(), Subsystem::medium));

    CycleRecord r;
    r.cycle_index = cycle_index;
    r.cycle_work = mean_energy(battery) - mean_energy(battery_before);
    r.cumulative_work = cumulative_before + r.cycle_work;
    r.battery_polarization = polarization_vector(battery);
    r.ergotropy = ergotropy(battery);
    r.coherence_rel_entropy = relative_entropy_of_coherence(battery);
    r.concurrence_post_stroke = concurrence(post_stroke);
    r.correlators = pauli_correlators(post_stroke);
    r.injection_angle =
        std::atan2(2.0 * config.p_mx, config.hot_populations.p0 - config.hot_populations.p1);
    r.medium_energy = mean_energy(medium);
    return r;
}

std::pair<CycleRecord, DensityOperator> run_single_cycle(const EngineConfig& config) {
    config.validate();
    const auto battery = prepare_battery(config.battery_init);
    const auto hot = prepare_medium_hot(config.p_mx, config.hot_populations);
    const auto cold = prepare_bath_state(config.cold_populations);

    const auto initial = DensityOperator::assume_valid(kron(hot.matrix(), battery.matrix()));
    const auto expanded = power_stroke(initial, config.theta);
    const auto cooled = reset_medium(expanded, cold);
    auto compressed = power_stroke(cooled, config.compression_angle());

    auto record = make_record(1, battery, expanded, compressed, config, 0.0);
    return {std::move(record), std::move(compressed)};
}

}  // namespace otto

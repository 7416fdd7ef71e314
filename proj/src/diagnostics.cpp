#include "otto/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "otto/errors.hpp"
#include "otto/tolerances.hpp"

namespace otto {

namespace {

void require_qubit(const DensityOperator& rho, const char* op) {
    if (rho.dim() != 2) throw DimensionError(std::string(op) + ": expected a single-qubit state");
}

void require_two_qubit(const DensityOperator& rho, const char* op) {
    if (rho.dim() != 4) throw DimensionError(std::string(op) + ": expected a two-qubit state");
}

double clamp_eigenvalue(double lambda, const char* op) {
    if (lambda < -tol::kPsdClamp) {
        throw ValidationError(std::string(op) + ": eigenvalue " + std::to_string(lambda) + " is negative");
    }
    return std::max(lambda, 0.0);
}

double entropy_of(std::span<const double> spectrum, const char* op) {
    double s = 0.0;
    for (double lambda : spectrum) {
        const double p = clamp_eigenvalue(lambda, op);
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

constexpr double kConcurrenceRankCutoff = 1e-14;

double qubit_energy(const ComplexMatrix& rho, double omega) {
    return 0.5 * omega * (rho(0, 0).real() - rho(1, 1).real());
}

}  // namespace

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) { return trace(rho * op).real(); }

PolarizationVector polarization_vector(const DensityOperator& rho) {
    require_qubit(rho, "polarization_vector");
    const auto& m = rho.matrix();
    return {0.5 * expectation(m, pauli(PauliAxis::x)), 0.5 * expectation(m, pauli(PauliAxis::y)),
            0.5 * expectation(m, pauli(PauliAxis::z))};
}

double mean_energy(const DensityOperator& rho, double omega) {
    require_qubit(rho, "mean_energy");
    return qubit_energy(rho.matrix(), omega);
}

double von_neumann_entropy(const DensityOperator& rho) {
    const auto spectrum = hermitian_eigenvalues(rho.matrix());
    return entropy_of(spectrum, "von_neumann_entropy");
}

DensityOperator dephased(const DensityOperator& rho) {
    ComplexMatrix d(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) d(i, i) = rho.matrix()(i, i).real();
    return DensityOperator::assume_valid(std::move(d));
}

double relative_entropy_of_coherence(const DensityOperator& rho) {
    std::vector<double> populations(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) populations[i] = rho.matrix()(i, i).real();
    const double value = entropy_of(populations, "relative_entropy_of_coherence") - von_neumann_entropy(rho);
    // Both entropies of an incoherent state agree to rounding.
    return std::max(value, 0.0);
}

DensityOperator passive_state(const DensityOperator& rho, double omega) {
    require_qubit(rho, "passive_state");
    const auto spectrum = hermitian_eigenvalues(rho.matrix());
    const double low = clamp_eigenvalue(spectrum[0], "passive_state");
    const double high = clamp_eigenvalue(spectrum[1], "passive_state");
    // |1> carries energy -omega/2, so it is the lower level for omega > 0.
    const std::array<double, 2> populations = omega >= 0.0 ? std::array{low, high} : std::array{high, low};
    return DensityOperator::assume_valid(ComplexMatrix::diagonal(populations));
}

ErgotropyReport ergotropy(const DensityOperator& rho, double omega) {
    require_qubit(rho, "ergotropy");
    ErgotropyReport report;
    report.passive_state = passive_state(rho, omega);
    const double energy = qubit_energy(rho.matrix(), omega);
    report.total = std::max(energy - qubit_energy(report.passive_state.matrix(), omega), 0.0);

    const auto diag = dephased(rho);
    const double diag_energy = qubit_energy(diag.matrix(), omega);
    const double diag_passive = qubit_energy(passive_state(diag, omega).matrix(), omega);
    report.incoherent = std::max(diag_energy - diag_passive, 0.0);
    report.coherent = std::max(report.total - report.incoherent, 0.0);
    return report;
}

CorrelatorSet pauli_correlators(const DensityOperator& joint) {
    require_two_qubit(joint, "pauli_correlators");
    const auto& m = joint.matrix();
    const auto id = pauli(PauliAxis::identity);
    const std::array axes{PauliAxis::x, PauliAxis::y, PauliAxis::z};
    CorrelatorSet out;
    for (std::size_t j = 0; j < 3; ++j) {
        const auto s = pauli(axes[j]);
        out.medium[j] = expectation(m, kron(s, id));
        out.battery[j] = expectation(m, kron(id, s));
        out.joint[j] = expectation(m, kron(s, s));
    }
    return out;
}

double concurrence(const DensityOperator& joint) {
    require_two_qubit(joint, "concurrence");
    const auto yy = kron(pauli(PauliAxis::y), pauli(PauliAxis::y));

    // With rho = W W^dagger (columns sqrt(p_k) v_k), sqrt(rho) rho~ sqrt(rho)
    // shares its nonzero spectrum with T^dagger T, T = W^T (Y x Y) W. Forming
    // T directly keeps a separable pure state at rounding level instead of
    // its square root.
    const auto eig = hermitian_eig(joint.matrix());
    const double cutoff = kConcurrenceRankCutoff * std::max(eig.eigenvalues.back(), 0.0);
    std::vector<std::array<cplx, 4>> w;
    for (std::size_t k = 0; k < 4; ++k) {
        const double p = clamp_eigenvalue(eig.eigenvalues[k], "concurrence");
        if (p <= cutoff) continue;
        std::array<cplx, 4> col{};
        for (std::size_t r = 0; r < 4; ++r) col[r] = std::sqrt(p) * eig.eigenvectors(r, k);
        w.push_back(col);
    }

    const std::size_t rank = w.size();
    ComplexMatrix t(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        for (std::size_t l = 0; l < rank; ++l) {
            cplx sum{};
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t c = 0; c < 4; ++c) sum += w[k][r] * yy(r, c) * w[l][c];
            }
            t(k, l) = sum;
        }
    }
    auto gram = dagger(t) * t;
    gram = 0.5 * (gram + dagger(gram));

    std::vector<double> lambdas(4, 0.0);
    const auto spectrum = hermitian_eigenvalues(gram);
    for (std::size_t k = 0; k < rank; ++k) lambdas[k] = std::sqrt(std::max(spectrum[k], 0.0));
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

}  // namespace otto

#include "otto/validate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include "otto/multicycle.hpp"
#include "otto/sampling.hpp"
#include "otto/tolerances.hpp"

namespace otto {

namespace {

using sampling::random_bloch;
using sampling::random_density;
using sampling::random_hermitian;
using sampling::random_unitary;

constexpr std::uint64_t kSeed = 20240611;

CheckResult bound(std::string name, double measured, double tolerance, std::string detail) {
    return {std::move(name), measured < tolerance, measured, tolerance, std::move(detail)};
}

double work_of(const EngineConfig& c) { return run_single_cycle(c).first.cycle_work; }

CheckResult closed_form_oracle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> coherence(-0.5, 0.5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto c = ideal_config(angle(rng), coherence(rng), random_bloch(rng));
        worst = std::max(worst, std::abs(closed_form_work(c).total - work_of(c)));
    }
    return bound("closed-form work vs simulated cycle", worst, 1e-10, "1000 random draws, ideal regime");
}

CheckResult propagator_unitarity(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        worst = std::max(worst, unitarity_defect(flip_flop_propagator(angle(rng))));
        worst = std::max(worst, unitarity_defect(unitary_propagator(random_hermitian(rng, 4), angle(rng))));
    }
    return bound("unitarity of propagators", worst, tol::kEquality, "max |U^dagger U - I|");
}

CheckResult eigen_reconstruction(std::mt19937_64& rng) {
    double worst = 0.0;
    for (std::size_t dim : {2U, 4U}) {
        for (int i = 0; i < 1000; ++i) {
            const auto h = random_hermitian(rng, dim);
            const auto eig = hermitian_eig(h);
            const auto rebuilt =
                eig.eigenvectors * ComplexMatrix::diagonal(std::span<const double>(eig.eigenvalues)) *
                dagger(eig.eigenvectors);
            worst = std::max(worst, max_abs_diff(rebuilt, h) / std::max(1.0, frobenius_norm(h)));
        }
    }
    return bound("Hermitian eigendecomposition", worst, tol::kEquality, "relative reconstruction residual");
}

CheckResult partial_trace_preservation(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto rho = random_density(rng, 4).matrix();
        for (auto keep : {Subsystem::medium, Subsystem::battery}) {
            worst = std::max(worst, std::abs(trace(partial_trace(rho, keep)) - trace(rho)));
        }
    }
    return bound("partial trace preserves trace", worst, tol::kEquality, "");
}

EngineConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    EngineConfig c;
    c.theta = unit(rng) * std::numbers::pi;
    if (unit(rng) < 0.3) c.theta_compression = unit(rng) * std::numbers::pi;
    const double h0 = unit(rng);
    c.hot_populations = {h0, 1.0 - h0};
    c.p_mx = (2.0 * unit(rng) - 1.0) * std::sqrt(h0 * (1.0 - h0));
    const double c0 = unit(rng);
    c.cold_populations = {c0, 1.0 - c0};
    c.battery_init = random_bloch(rng);
    c.noise.battery_dephasing_per_reset = unit(rng);
    c.noise.battery_t2_per_cycle = unit(rng);
    return c;
}

std::pair<CheckResult, CheckResult> stage_validity(std::mt19937_64& rng) {
    double worst_trace = 0.0;
    double worst_eigen = 0.0;
    int applications = 0;
    while (applications < 10000) {
        auto c = random_config(rng);
        c.cycles = 10;
        run_engine(c, [&](std::string_view, int, const DensityOperator& rho) {
            const auto d = state_defects(rho.matrix());
            worst_trace = std::max(worst_trace, d.trace_error);
            worst_eigen = std::min(worst_eigen, d.min_eigenvalue);
            ++applications;
        });
    }
    const auto detail = std::to_string(applications) + " stage applications";
    return {bound("stage outputs keep unit trace", worst_trace, tol::kEquality, detail),
            {"stage outputs stay positive", worst_eigen > -tol::kPsdClamp, worst_eigen, -tol::kPsdClamp,
             detail + "; minimum eigenvalue"}};
}

double record_distance(const CycleRecord& a, const CycleRecord& b) {
    double d = std::abs(a.cycle_work - b.cycle_work);
    d = std::max(d, std::abs(a.battery_polarization.px - b.battery_polarization.px));
    d = std::max(d, std::abs(a.battery_polarization.py - b.battery_polarization.py));
    d = std::max(d, std::abs(a.battery_polarization.pz - b.battery_polarization.pz));
    d = std::max(d, std::abs(a.ergotropy.total - b.ergotropy.total));
    d = std::max(d, std::abs(a.concurrence_post_stroke - b.concurrence_post_stroke));
    return d;
}

CheckResult noise_free_consistency(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        auto c = random_config(rng);
        c.noise = {};
        c.cycles = 1;
        const auto single = run_single_cycle(c);
        const auto trace = run_engine(c);
        worst = std::max(worst, record_distance(single.first, trace.records.front()));
        worst = std::max(worst, max_abs_diff(single.second.matrix(), trace.final_joint.matrix()));
    }
    return bound("single cycle equals one-cycle engine run", worst, tol::kEquality, "ideal noise");
}

CheckResult first_cycle_classical_equality(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        auto c = random_config(rng);
        c.battery_init.px = 0.0;
        c.battery_init.py = 0.0;
        c.cycles = 1;
        const auto cmp = compare_coherent_incoherent(c);
        worst = std::max(worst, std::abs(cmp.advantage[0].work_coherent - cmp.advantage[0].work_incoherent));
    }
    return bound("classical battery: coherence leaves cycle-1 work unchanged", worst, tol::kValidation,
                 "random noise settings");
}

CheckResult swap_stroke_has_no_quantum_work(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto c = random_config(rng);
        c.theta = std::numbers::pi / 2;
        c.theta_compression.reset();
        c.battery_init.py = 0.0;
        c.cycles = 8;
        const auto cmp = compare_coherent_incoherent(c);
        for (const auto& a : cmp.advantage) worst = std::max(worst, std::abs(a.work_coherent - a.work_incoherent));
    }
    return bound("full swap with P_B^y = 0: no quantum work at any cycle", worst, tol::kEquality, "");
}

CheckResult cumulative_sums(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        auto c = random_config(rng);
        c.cycles = 25;
        double sum = 0.0;
        for (const auto& r : run_engine(c).records) {
            sum += r.cycle_work;
            worst = std::max(worst, std::abs(sum - r.cumulative_work));
        }
    }
    return bound("cumulative work is the running sum", worst, tol::kValidation, "");
}

CheckResult determinism(std::mt19937_64& rng) {
    auto c = random_config(rng);
    c.cycles = 30;
    const auto a = run_engine(c);
    const auto b = run_engine(c);
    bool same = a.final_joint == b.final_joint;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        same = same && a.records[i].cumulative_work == b.records[i].cumulative_work &&
               a.records[i].battery_polarization == b.records[i].battery_polarization;
    }
    return {"repeated runs are bit-identical", same, same ? 0.0 : 1.0, 0.0, ""};
}

std::vector<CheckResult> diagnostic_truths() {
    ComplexMatrix bell(4);
    bell(1, 1) = bell(1, 2) = bell(2, 1) = bell(2, 2) = 0.5;
    ComplexMatrix singlet(4);
    singlet(1, 1) = singlet(2, 2) = 0.5;
    singlet(1, 2) = singlet(2, 1) = -0.5;
    const DensityOperator werner(0.5 * singlet + 0.125 * ComplexMatrix::identity(4));
    const auto plus = prepare_battery({0.5, 0.0, 0.0});
    const auto product = DensityOperator(kron(plus.matrix(), prepare_battery({0.0, 0.3, -0.2}).matrix()));
    const auto e = ergotropy(plus);
    const double ln2 = std::log(2.0);

    return {bound("concurrence of a Bell state", std::abs(concurrence(DensityOperator(bell)) - 1.0), 1e-10, ""),
            bound("concurrence of a product state", concurrence(product), 1e-10, ""),
            bound("concurrence of Werner p = 1/2", std::abs(concurrence(werner) - 0.25), 1e-10, ""),
            bound("ergotropy of |+>", std::max(std::abs(e.total - 0.5), std::abs(e.coherent - 0.5)), tol::kEquality,
                  "total and coherent part"),
            bound("coherence of |+>", std::abs(relative_entropy_of_coherence(plus) - ln2), tol::kEquality, ""),
            bound("entropy of I/2", std::abs(von_neumann_entropy(prepare_battery({})) - ln2), tol::kEquality, "")};
}

CheckResult concurrence_local_invariance(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const auto rho = random_density(rng, 4, 1 + static_cast<std::size_t>(i % 4));
        const auto local = kron(random_unitary(rng, 2), random_unitary(rng, 2));
        const DensityOperator rotated(local * rho.matrix() * dagger(local));
        worst = std::max(worst, std::abs(concurrence(rotated) - concurrence(rho)));
    }
    return bound("concurrence under local unitaries", worst, 1e-10, "");
}

}  // namespace

std::vector<CheckResult> run_validation_suite() {
    std::mt19937_64 rng(kSeed);
    std::vector<CheckResult> out;
    out.push_back(closed_form_oracle(rng));
    out.push_back(propagator_unitarity(rng));
    out.push_back(eigen_reconstruction(rng));
    out.push_back(partial_trace_preservation(rng));
    const auto [trace_check, eigen_check] = stage_validity(rng);
    out.push_back(trace_check);
    out.push_back(eigen_check);
    out.push_back(noise_free_consistency(rng));
    out.push_back(first_cycle_classical_equality(rng));
    out.push_back(swap_stroke_has_no_quantum_work(rng));
    out.push_back(cumulative_sums(rng));
    out.push_back(determinism(rng));
    for (auto& check : diagnostic_truths()) out.push_back(std::move(check));
    out.push_back(concurrence_local_invariance(rng));
    return out;
}

bool print_validation_table(std::ostream& out, const std::vector<CheckResult>& results) {
    std::size_t width = 5;
    for (const auto& r : results) width = std::max(width, r.name.size());
    bool all = true;
    out << std::left << std::setw(static_cast<int>(width)) << "check" << "  result  measured     tolerance\n";
    for (const auto& r : results) {
        all = all && r.passed;
        out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << (r.passed ? "PASS  " : "FAIL  ")
            << "  " << std::scientific << std::setprecision(3) << std::setw(11) << r.measured << "  "
            << std::setw(10) << r.tolerance;
        if (!r.detail.empty()) out << "  " << r.detail;
        out << '\n';
    }
    out << std::defaultfloat << (all ? "all checks passed" : "some checks FAILED") << " (" << results.size()
        << " checks)\n";
    return all;
}

}  // namespace otto

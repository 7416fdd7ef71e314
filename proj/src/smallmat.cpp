#include "otto/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "otto/errors.hpp"
#include "otto/tolerances.hpp"

namespace otto {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                             " vs " + std::to_string(b.dim()) + ")");
    }
}

void require_hermitian(const ComplexMatrix& h, const char* op) {
    const double defect = hermiticity_defect(h);
    if (defect > tol::kValidation) {
        throw ValidationError(std::string(op) + ": matrix is not Hermitian (max asymmetry " +
                              std::to_string(defect) + ")");
    }
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing a(p, q), p < q. The rotation is
// J = D R with D = diag(1, e^{-i phi}) removing the phase of a(p, q) and R the
// real symmetric Jacobi rotation; a <- J^dagger a J and v <- v J.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cplx phase = apq / r;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Columns of J: J(p,p)=c, J(q,p)=-s e^{-i phi}, J(p,q)=s, J(q,q)=c e^{-i phi}.
    const cplx jqp = -s * std::conj(phase);
    const cplx jqq = c * std::conj(phase);

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * c + akq * jqp;
        a(k, q) = akp * s + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = c * apk + std::conj(jqp) * aqk;
        a(q, k) = s * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * c + vkq * jqp;
        v(k, q) = vkp * s + vkq * jqq;
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw DimensionError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                             std::to_string(entries_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw DimensionError("ComplexMatrix: rows must form a square matrix");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "add");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "subtract");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx factor) noexcept {
    for (auto& e : entries_) e *= factor;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx factor, ComplexMatrix a) { return a *= factor; }
ComplexMatrix operator*(ComplexMatrix a, cplx factor) { return a *= factor; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) { return a + b; }
ComplexMatrix scale(const ComplexMatrix& a, cplx factor) { return factor * a; }

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(j, i) = std::conj(a(i, j));
    }
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = std::conj(a(i, j));
    }
    return out;
}

cplx trace(const ComplexMatrix& a) {
    cplx sum{};
    for (std::size_t i = 0; i < a.dim(); ++i) sum += a(i, i);
    return sum;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

double hermiticity_defect(const ComplexMatrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
    return max_abs_diff(dagger(u) * u, ComplexMatrix::identity(u.dim()));
}

double frobenius_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (const auto& e : a.entries()) sum += std::norm(e);
    return std::sqrt(sum);
}

ComplexMatrix pauli(PauliAxis axis) {
    constexpr cplx i{0.0, 1.0};
    switch (axis) {
        case PauliAxis::x: return {{0.0, 1.0}, {1.0, 0.0}};
        case PauliAxis::y: return {{0.0, -i}, {i, 0.0}};
        case PauliAxis::z: return {{1.0, 0.0}, {0.0, -1.0}};
        case PauliAxis::plus: return {{0.0, 2.0}, {0.0, 0.0}};
        case PauliAxis::minus: return {{0.0, 0.0}, {2.0, 0.0}};
        case PauliAxis::identity: return ComplexMatrix::identity(2);
    }
    return {};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim() * b.dim();
    if (n > tol::kMaxDim) {
        throw DimensionError("kron: result dimension " + std::to_string(n) + " exceeds the limit of " +
                             std::to_string(tol::kMaxDim));
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    out(i * b.dim() + k, j * b.dim() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& joint, Subsystem keep) {
    if (joint.dim() != 4) {
        throw DimensionError("partial_trace: expected a 4x4 two-qubit operator, got dim " +
                             std::to_string(joint.dim()));
    }
    ComplexMatrix out(2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            cplx sum{};
            for (std::size_t k = 0; k < 2; ++k) {
                sum += keep == Subsystem::medium ? joint(2 * r + k, 2 * c + k) : joint(2 * k + r, 2 * k + c);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
    require_hermitian(h, "hermitian_eig");
    const std::size_t n = h.dim();

    // Work on the exactly Hermitian part so residual asymmetry does not leak in.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    // Below ~eps * ||A|| further rotations cannot reduce the off-norm.
    const double floor = 8.0 * 2.220446049250313e-16 * frobenius_norm(a);
    const double target = std::max(tol::kJacobiOffNorm, floor);
    int sweep = 0;
    while (off_diagonal_norm(a) >= target) {
        if (++sweep > tol::kJacobiMaxSweeps) {
            throw ValidationError("hermitian_eig: Jacobi iteration did not converge");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return a(l, l).real() < a(r, r).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, k) = v(row, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) { return hermitian_eig(h).eigenvalues; }

ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<cplx(double)>& f) {
    const auto eig = hermitian_eig(h);
    const std::size_t n = h.dim();
    const auto& v = eig.eigenvectors;
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx fk = f(eig.eigenvalues[k]);
        if (fk == cplx{}) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = v(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
        }
    }
    return out;
}

ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t) {
    return hermitian_function(h, [t](double lambda) { return std::exp(cplx{0.0, -t * lambda}); });
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
    return hermitian_function(h, [](double lambda) -> cplx {
        if (lambda < -tol::kPsdClamp) {
            throw ValidationError("psd_sqrt: eigenvalue " + std::to_string(lambda) + " is negative");
        }
        return std::sqrt(std::max(lambda, 0.0));
    });
}

}  // namespace otto

#pragma once

// Dense complex linear algebra for Hilbert spaces of dimension 2..16.
//
// Two-qubit operators use the tensor order medium (left) x battery (right),
// basis |m b> in {|00>, |01>, |10>, |11>}, where |0> is the +1 eigenstate
// of sigma^z.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace otto {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    // dim x dim zero matrix.
    explicit ComplexMatrix(std::size_t dim);
    // Row-major entries; throws DimensionError unless entries.size() == dim^2.
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
    // Nested rows, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::span<const cplx> values);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const cplx> entries() const noexcept { return entries_; }

    cplx& operator()(std::size_t row, std::size_t col) noexcept { return entries_[row * dim_ + col]; }
    const cplx& operator()(std::size_t row, std::size_t col) const noexcept {
        return entries_[row * dim_ + col];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx factor) noexcept;

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx factor, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx factor);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

// Largest |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// Largest |a_ij - conj(a_ji)|.
double hermiticity_defect(const ComplexMatrix& a);
// Largest |(U^dagger U - I)_ij|.
double unitarity_defect(const ComplexMatrix& u);
double frobenius_norm(const ComplexMatrix& a);

enum class PauliAxis { x, y, z, plus, minus, identity };

// Standard Pauli matrices; plus/minus use the unnormalized sigma^x +/- i sigma^y.
ComplexMatrix pauli(PauliAxis axis);

// Kronecker product a (x) b. Throws DimensionError when the result exceeds 16.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { medium, battery };

// Reduced operator of a 4x4 medium (x) battery operator over the kept qubit.
ComplexMatrix partial_trace(const ComplexMatrix& joint, Subsystem keep);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Cyclic complex Jacobi. Throws ValidationError when h is not Hermitian
// within the validation tolerance.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// V diag(f(lambda)) V^dagger. Complex-valued f yields e.g. exp(-i t H).
ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<cplx(double)>& f);

// exp(-i t H) for Hermitian H.
ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t);

// Principal square root of a PSD matrix; eigenvalues in [-kPsdClamp, 0) clamp
// to zero, more negative ones raise ValidationError.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

}  // namespace otto

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gndline {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix, sized for the small phasor systems
/// solved here (n <= 8).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    ComplexVector multiply(const ComplexVector& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    ComplexVector data_;
};

/// Thrown when Gaussian elimination finds no usable pivot.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot_index, double pivot_magnitude)
        : std::runtime_error("singular matrix: pivot " + std::to_string(pivot_index) +
                             " has magnitude " + std::to_string(pivot_magnitude)),
          pivot_index(pivot_index) {}
    std::size_t pivot_index;
};

/// Solves a*x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError when the best pivot magnitude falls
/// below pivot_eps, std::invalid_argument on dimension mismatch.
ComplexVector solve_linear(ComplexMatrix a, ComplexVector b, double pivot_eps = 1e-30);

using WideComplex = std::complex<long double>;
using WideComplexVector = std::vector<WideComplex>;

/// Same elimination carried out in extended precision. Used where a tiny
/// difference of two large solution components (V5 - V6, I_g + I_s) must
/// survive cancellation; take the difference before narrowing to double.
WideComplexVector solve_linear_wide(const ComplexMatrix& a, const ComplexVector& b,
                                    double pivot_eps = 1e-30);

/// Wide-input overload; a is row-major with n = b.size() rows.
WideComplexVector solve_linear_wide(std::vector<WideComplex> a, WideComplexVector b,
                                    double pivot_eps = 1e-30);

}  // namespace gndline

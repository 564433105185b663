#include "gndline/linalg.hpp"

#include <cmath>
#include <utility>

namespace gndline {

ComplexVector ComplexMatrix::multiply(const ComplexVector& x) const {
    if (x.size() != cols_) {
        throw std::invalid_argument("matrix-vector dimension mismatch");
    }
    ComplexVector y(rows_, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

namespace {

// Row-major dense elimination shared by the double and extended paths.
// Rows and columns are equilibrated first: nodal systems mix admittance
// rows with O(1) constraint rows, spanning many decades, and the scaled
// system has a far smaller condition number.
template <typename Scalar>
std::vector<Scalar> eliminate(std::vector<Scalar> a, std::vector<Scalar> b, std::size_t n,
                              double pivot_eps) {
    const auto at = [&](std::size_t r, std::size_t c) -> Scalar& { return a[r * n + c]; };
    using Real = typename Scalar::value_type;

    std::vector<Real> row_scale(n, Real{1});
    for (std::size_t r = 0; r < n; ++r) {
        Real m{0};
        for (std::size_t c = 0; c < n; ++c) m = std::max(m, std::abs(at(r, c)));
        if (m > Real{0}) {
            row_scale[r] = Real{1} / m;
            for (std::size_t c = 0; c < n; ++c) at(r, c) *= row_scale[r];
            b[r] *= row_scale[r];
        }
    }
    std::vector<Real> col_scale(n, Real{1});
    for (std::size_t c = 0; c < n; ++c) {
        Real m{0};
        for (std::size_t r = 0; r < n; ++r) m = std::max(m, std::abs(at(r, c)));
        if (m > Real{0}) {
            col_scale[c] = Real{1} / m;
            for (std::size_t r = 0; r < n; ++r) at(r, c) *= col_scale[c];
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        auto best_mag = std::abs(at(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const auto mag = std::abs(at(r, k));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (!(best_mag > pivot_eps)) {
            throw SingularMatrixError(k, static_cast<double>(best_mag));
        }
        if (best != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(at(k, c), at(best, c));
            std::swap(b[k], b[best]);
        }
        const Scalar pivot = at(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Scalar factor = at(r, k) / pivot;
            if (factor == Scalar{}) continue;
            at(r, k) = Scalar{};
            for (std::size_t c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
            b[r] -= factor * b[k];
        }
    }

    std::vector<Scalar> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Scalar acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= at(i, c) * x[c];
        x[i] = acc / at(i, i);
    }
    for (std::size_t c = 0; c < n; ++c) x[c] *= col_scale[c];
    return x;
}

void check_shape(const ComplexMatrix& a, const ComplexVector& b) {
    if (a.cols() != a.rows()) throw std::invalid_argument("solve_linear: matrix not square");
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: rhs size mismatch");
}

}  // namespace

ComplexVector solve_linear(ComplexMatrix a, ComplexVector b, double pivot_eps) {
    check_shape(a, b);
    const std::size_t n = a.rows();
    std::vector<Complex> flat(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = a(r, c);
    return eliminate<Complex>(std::move(flat), std::move(b), n, pivot_eps);
}

WideComplexVector solve_linear_wide(const ComplexMatrix& a, const ComplexVector& b,
                                    double pivot_eps) {
    check_shape(a, b);
    const std::size_t n = a.rows();
    std::vector<WideComplex> flat(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = WideComplex{a(r, c)};
    WideComplexVector rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = WideComplex{b[i]};
    return eliminate<WideComplex>(std::move(flat), std::move(rhs), n, pivot_eps);
}

WideComplexVector solve_linear_wide(std::vector<WideComplex> a, WideComplexVector b,
                                    double pivot_eps) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw std::invalid_argument("solve_linear: matrix not square");
    return eliminate<WideComplex>(std::move(a), std::move(b), n, pivot_eps);
}

}  // namespace gndline

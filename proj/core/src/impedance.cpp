#include "gndline/impedance.hpp"

#include <cmath>

namespace gndline {

Complex ImpedanceElement::evaluate(double omega) const {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("ImpedanceElement::evaluate: omega must be > 0");
    }
    if (resistance < 0.0 || inductance < 0.0) {
        throw std::invalid_argument("ImpedanceElement::evaluate: negative R or L");
    }
    Complex z{resistance, omega * inductance};
    if (capacitance.has_value()) {
        if (!(*capacitance > 0.0)) {
            throw std::invalid_argument(
                "ImpedanceElement::evaluate: capacitance must be > 0 (use absent for a short)");
        }
        z += 1.0 / Complex{0.0, omega * *capacitance};
    }
    return z;
}

WideComplex ImpedanceElement::evaluate_wide(double omega) const {
    evaluate(omega);  // reuse the argument checks
    const long double w = omega;
    WideComplex z{static_cast<long double>(resistance), w * static_cast<long double>(inductance)};
    if (capacitance.has_value()) {
        z += 1.0L / WideComplex{0.0L, w * static_cast<long double>(*capacitance)};
    }
    return z;
}

YLegs delta_to_y(Complex z_ab, Complex z_bc, Complex z_ca, double eps) {
    const Complex sum = z_ab + z_bc + z_ca;
    if (!(std::abs(sum) > eps)) throw DegenerateDeltaError(std::abs(sum));
    return YLegs{
        z_ab * z_ca / sum,
        z_ab * z_bc / sum,
        z_bc * z_ca / sum,
    };
}

WideYLegs delta_to_y_wide(WideComplex z_ab, WideComplex z_bc, WideComplex z_ca, double eps) {
    const WideComplex sum = z_ab + z_bc + z_ca;
    if (!(std::abs(sum) > static_cast<long double>(eps))) {
        throw DegenerateDeltaError(static_cast<double>(std::abs(sum)));
    }
    return WideYLegs{
        z_ab * z_ca / sum,
        z_ab * z_bc / sum,
        z_bc * z_ca / sum,
    };
}

}  // namespace gndline

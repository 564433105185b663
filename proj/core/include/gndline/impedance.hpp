#pragma once

#include "gndline/linalg.hpp"

#include <optional>
#include <stdexcept>

namespace gndline {

/// Series R-L-C element evaluated as a phasor impedance.
/// An absent capacitance means the capacitive branch is a short and
/// contributes no reactance; this is distinct from C = 0, which is
/// rejected (it would be an open circuit, not representable here).
struct ImpedanceElement {
    double resistance = 0.0;                 // ohm, >= 0
    double inductance = 0.0;                 // henry, >= 0
    std::optional<double> capacitance = {};  // farad, > 0 when present

    /// R + jwL + 1/(jwC), capacitive term omitted when absent. w > 0 only.
    Complex evaluate(double omega) const;

    /// Extended-precision evaluation for cancellation-sensitive reductions.
    WideComplex evaluate_wide(double omega) const;
};

class DegenerateDeltaError : public std::runtime_error {
public:
    explicit DegenerateDeltaError(double denom_magnitude)
        : std::runtime_error("degenerate delta: |z_ab + z_bc + z_ca| = " +
                             std::to_string(denom_magnitude)) {}
};

/// Y-equivalent legs of a delta. Leg naming follows the delta nodes:
/// at_a attaches to the node shared by z_ab and z_ca, and so on.
struct YLegs {
    Complex at_a;
    Complex at_b;
    Complex at_c;
};

/// Delta -> Y: each leg is the product of the two adjacent delta
/// impedances over the sum of all three.
YLegs delta_to_y(Complex z_ab, Complex z_bc, Complex z_ca, double eps = 1e-30);

struct WideYLegs {
    WideComplex at_a;
    WideComplex at_b;
    WideComplex at_c;
};

WideYLegs delta_to_y_wide(WideComplex z_ab, WideComplex z_bc, WideComplex z_ca,
                          double eps = 1e-30);

}  // namespace gndline

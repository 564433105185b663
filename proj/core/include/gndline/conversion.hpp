#pragma once

#include "gndline/grid.hpp"
#include "gndline/impedance.hpp"
#include "gndline/linalg.hpp"

#include <array>
#include <vector>

namespace gndline {

/// Converting-stage circuit: input/output parasitic impedances of the
/// sensor front end plus the upper (left) and lower (right) transmission
/// line component impedances.
struct ConversionNetwork {
    ImpedanceElement z_1i, z_2i, z_3i;  // input side; z_3i bridges GND and signal wires
    ImpedanceElement z_1o, z_2o, z_3o;  // output side
    ImpedanceElement z_l;               // upper line component impedance
    ImpedanceElement z_r;               // lower line component impedance
};

/// Drive terms of the converting stage.
struct ConversionExcitation {
    Complex v_dm_i = 0.0;  // input DM voltage, V1 - V2
    Complex i_cm = 0.0;    // input CM current, I1 + I2 - I3 - I4
    Complex i_3 = 0.0;     // output-side current, upper line
    Complex i_4 = 0.0;     // output-side current, lower line
};

struct ConversionSolution {
    std::array<Complex, 6> node_voltages;  // V1..V6
    Complex i_1, i_2;
    Complex v_dm_o;  // V5 - V6
};

/// Linear coefficients of V_DM,O = k1 V_DM,I + k2 I_CM + k3 I3 + k4 I4,
/// plus the decomposition k2 = c1 c2 (h1 + h2). k1 is dimensionless,
/// k2..k4 carry ohms; h1/h2 ohm^2, c1 1/ohm^2 scale, c2 dimensionless.
struct ConversionCoefficients {
    Complex k1, k2, k3, k4;
    Complex c1, c2;
    Complex h1, h2;
};

/// Reduced impedances z[0..7] = Z1..Z8. Z1 and Z8 pass through the
/// bridging elements; Z2..Z7 come from the two line deltas.
std::array<Complex, 8> reduce_conversion(const ConversionNetwork& net, double omega);

/// Solves the 8-unknown nodal system [V1..V6, I1, I2] assembled from the
/// six node equations plus the I_CM and V_DM,I definitions.
ConversionSolution solve_conversion(const ConversionNetwork& net,
                                    const ConversionExcitation& exc, double omega);

ConversionCoefficients conversion_coefficients(const ConversionNetwork& net, double omega);

Complex v_dm_o_closed_form(const ConversionCoefficients& coeffs,
                           const ConversionExcitation& exc);

/// |k2| and phase per grid frequency.
std::vector<FrcRow> frc_conversion(const ConversionNetwork& net, const FrequencyGrid& grid);

}  // namespace gndline

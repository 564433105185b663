#include "gndline/conversion.hpp"

#include "gndline/parallel.hpp"

#include <cmath>

namespace gndline {

namespace {

Complex narrow(WideComplex v) {
    return Complex{static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Reactances many decades apart can cancel in the intermediate sums, so
// the reduction and everything downstream stay in extended precision;
// only the final results are narrowed.
std::array<WideComplex, 8> reduce_conversion_wide(const ConversionNetwork& net, double omega) {
    const WideComplex z_l = net.z_l.evaluate_wide(omega);
    const WideComplex z_r = net.z_r.evaluate_wide(omega);
    const WideComplex z_1i = net.z_1i.evaluate_wide(omega);
    const WideComplex z_2i = net.z_2i.evaluate_wide(omega);
    const WideComplex z_1o = net.z_1o.evaluate_wide(omega);
    const WideComplex z_2o = net.z_2o.evaluate_wide(omega);

    // Upper delta: legs z_l (node1-node3 span), z_1i, z_1o.
    const WideYLegs upper = delta_to_y_wide(z_l, z_1o, z_1i);  // a: line, b: out, c: in
    const WideYLegs lower = delta_to_y_wide(z_r, z_2o, z_2i);

    std::array<WideComplex, 8> z;
    z[0] = net.z_3i.evaluate_wide(omega);  // Z1
    z[1] = upper.at_a;                     // Z2 = ZL Z1I / (ZL + Z1I + Z1O)
    z[2] = lower.at_a;                     // Z3 = ZR Z2I / (ZR + Z2I + Z2O)
    z[3] = upper.at_c;                     // Z4 = Z1I Z1O / (ZL + Z1I + Z1O)
    z[4] = lower.at_c;                     // Z5 = Z2I Z2O / (ZR + Z2I + Z2O)
    z[5] = upper.at_b;                     // Z6 = ZL Z1O / (ZL + Z1I + Z1O)
    z[6] = lower.at_b;                     // Z7 = ZR Z2O / (ZR + Z2I + Z2O)
    z[7] = net.z_3o.evaluate_wide(omega);  // Z8
    return z;
}

}  // namespace

std::array<Complex, 8> reduce_conversion(const ConversionNetwork& net, double omega) {
    const auto zw = reduce_conversion_wide(net, omega);
    std::array<Complex, 8> z;
    for (std::size_t i = 0; i < 8; ++i) z[i] = narrow(zw[i]);
    return z;
}

ConversionSolution solve_conversion(const ConversionNetwork& net,
                                    const ConversionExcitation& exc, double omega) {
    const auto z = reduce_conversion_wide(net, omega);
    const WideComplex y1 = 1.0L / z[0], y2 = 1.0L / z[1], y3 = 1.0L / z[2], y4 = 1.0L / z[3];
    const WideComplex y5 = 1.0L / z[4], y6 = 1.0L / z[5], y7 = 1.0L / z[6], y8 = 1.0L / z[7];

    // Unknowns x = [V1..V6, I1, I2].
    std::vector<WideComplex> a(64);
    WideComplexVector b(8);
    const auto at = [&](std::size_t r, std::size_t c) -> WideComplex& { return a[r * 8 + c]; };

    // I1 - (V1-V3)/Z2 - (V1-V2)/Z1 = 0
    at(0, 0) = -y2 - y1; at(0, 1) = y1; at(0, 2) = y2; at(0, 6) = 1.0L;
    // I2 + (V1-V2)/Z1 + (V4-V2)/Z3 = 0
    at(1, 0) = y1; at(1, 1) = -y1 - y3; at(1, 3) = y3; at(1, 7) = 1.0L;
    // (V1-V3)/Z2 - (V3-V5)/Z6 - V3/Z4 = 0
    at(2, 0) = y2; at(2, 2) = -y2 - y6 - y4; at(2, 4) = y6;
    // (V6-V4)/Z7 - (V4-V2)/Z3 - V4/Z5 = 0
    at(3, 1) = y3; at(3, 3) = -y3 - y7 - y5; at(3, 5) = y7;
    // (V3-V5)/Z6 - (V5-V6)/Z8 = I3
    at(4, 2) = y6; at(4, 4) = -y6 - y8; at(4, 5) = y8;
    b[4] = WideComplex{exc.i_3};
    // (V5-V6)/Z8 - (V6-V4)/Z7 = I4
    at(5, 3) = y7; at(5, 4) = y8; at(5, 5) = -y8 - y7;
    b[5] = WideComplex{exc.i_4};
    // I1 + I2 = I_CM + I3 + I4
    at(6, 6) = 1.0L; at(6, 7) = 1.0L;
    b[6] = WideComplex{exc.i_cm} + WideComplex{exc.i_3} + WideComplex{exc.i_4};
    // V1 - V2 = V_DM,I
    at(7, 0) = 1.0L; at(7, 1) = -1.0L;
    b[7] = WideComplex{exc.v_dm_i};

    // Extended-precision solve: V5 and V6 are nearly equal for weakly
    // asymmetric networks, so V5 - V6 must be taken before narrowing.
    const WideComplexVector x = solve_linear_wide(std::move(a), std::move(b));

    ConversionSolution sol;
    for (std::size_t i = 0; i < 6; ++i) sol.node_voltages[i] = narrow(x[i]);
    sol.i_1 = narrow(x[6]);
    sol.i_2 = narrow(x[7]);
    sol.v_dm_o = narrow(x[4] - x[5]);
    return sol;
}

ConversionCoefficients conversion_coefficients(const ConversionNetwork& net, double omega) {
    const auto z = reduce_conversion_wide(net, omega);
    const WideComplex z2 = z[1], z3 = z[2], z4 = z[3], z5 = z[4];
    const WideComplex z6 = z[5], z7 = z[6], z8 = z[7];

    const WideComplex denom = (z6 + z7 + z8) * (z2 + z3 + z4 + z5) + (z2 + z3) * (z4 + z5);
    if (!(std::abs(denom) > 1e-30L)) {
        throw std::runtime_error("conversion_coefficients: shared denominator below epsilon");
    }

    ConversionCoefficients c;
    c.k1 = narrow(z8 * (z4 + z5) / denom);
    c.k3 = narrow(-z8 * (z6 * (z2 + z3 + z4 + z5) + z2 * (z4 + z5)) / denom);
    c.k4 = narrow(z8 * (z7 * (z2 + z3 + z4 + z5) + z3 * (z4 + z5)) / denom);

    const WideComplex z_l = net.z_l.evaluate_wide(omega);
    const WideComplex z_r = net.z_r.evaluate_wide(omega);
    const WideComplex z_1i = net.z_1i.evaluate_wide(omega);
    const WideComplex z_2i = net.z_2i.evaluate_wide(omega);
    const WideComplex z_1o = net.z_1o.evaluate_wide(omega);
    const WideComplex z_2o = net.z_2o.evaluate_wide(omega);

    const WideComplex c1 = z8 / denom;
    const WideComplex c2 = z_1i * z_2i / ((z_l + z_1i + z_1o) * (z_r + z_2i + z_2o));
    const WideComplex h1 = z_r * (z_1o - z_2o);
    // Sign convention: h2 = Z2O (ZR - ZL), so that k2 = c1 c2 (h1 + h2)
    // reduces to c1 c2 (ZR Z1O - ZL Z2O), the value the nodal solve yields.
    const WideComplex h2 = z_2o * (z_r - z_l);
    c.c1 = narrow(c1);
    c.c2 = narrow(c2);
    c.h1 = narrow(h1);
    c.h2 = narrow(h2);
    // Z8 (Z3 Z4 - Z2 Z5) / D expands to exactly this product; the factored
    // form keeps the asymmetry difference in one subtraction instead of a
    // difference of large near-equal products. Computed from the narrowed
    // factors so the published decomposition holds exactly in double.
    c.k2 = c.c1 * c.c2 * (c.h1 + c.h2);
    return c;
}

Complex v_dm_o_closed_form(const ConversionCoefficients& coeffs,
                           const ConversionExcitation& exc) {
    return coeffs.k1 * exc.v_dm_i + coeffs.k2 * exc.i_cm + coeffs.k3 * exc.i_3 +
           coeffs.k4 * exc.i_4;
}

std::vector<FrcRow> frc_conversion(const ConversionNetwork& net, const FrequencyGrid& grid) {
    const std::vector<double> freqs = grid.frequencies();
    std::vector<FrcRow> rows(freqs.size());
    parallel_for(freqs.size(), [&](std::size_t i) {
        const double f = freqs[i];
        try {
            const ConversionCoefficients c = conversion_coefficients(net, 2.0 * M_PI * f);
            rows[i] = FrcRow{f, std::abs(c.k2), std::arg(c.k2)};
        } catch (const std::exception& e) {
            throw std::runtime_error("frc_conversion at " + std::to_string(f) +
                                     " Hz: " + e.what());
        }
    });
    return rows;
}

}  // namespace gndline

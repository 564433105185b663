#include "gndline/coupling.hpp"

#include "gndline/parallel.hpp"

#include <cmath>

namespace gndline {

namespace {

Complex narrow(WideComplex v) {
    return Complex{static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

struct WideCouplingLegs {
    WideComplex z11, z12, z13, z21, z22, z23;
};

// Reactances many decades apart can cancel in the reduced-leg sums, so
// the reduction and everything downstream stay in extended precision.
WideCouplingLegs reduce_deltas_wide(const CouplingNetwork& net, double omega) {
    // Delta nodes: g = victim GND, s = signal wire, a = attacker GND.
    const WideYLegs first = delta_to_y_wide(net.z_ga1.evaluate_wide(omega),   // g-a
                                            net.z_sa1.evaluate_wide(omega),   // a-s
                                            net.z_gs1.evaluate_wide(omega));  // s-g
    const WideYLegs second = delta_to_y_wide(net.z_ga2.evaluate_wide(omega),
                                             net.z_sa2.evaluate_wide(omega),
                                             net.z_gs2.evaluate_wide(omega));
    // z11 = leg at g (adjacent z_ga, z_gs), z13 = leg at a, z12 = leg at s.
    return WideCouplingLegs{
        first.at_a,  first.at_c,  first.at_b,
        second.at_a, second.at_c, second.at_b,
    };
}

std::vector<WideComplex> assemble_kvl(const WideCouplingLegs& y, WideComplex z_g,
                                      WideComplex z_v) {
    std::vector<WideComplex> a(9);
    a[0] = y.z11 + y.z13;
    a[1] = -(y.z11 + y.z13);
    a[2] = -y.z13;

    a[3] = y.z11;
    a[4] = -(y.z11 + y.z21 + z_g);
    a[5] = y.z12 + z_v + y.z22;

    a[6] = -y.z13;
    a[7] = y.z13 + y.z23;
    a[8] = y.z12 + z_v + y.z22 + y.z23 + y.z13;
    return a;
}

}  // namespace

CouplingYLegs reduce_deltas(const CouplingNetwork& net, double omega) {
    const WideCouplingLegs y = reduce_deltas_wide(net, omega);
    return CouplingYLegs{narrow(y.z11), narrow(y.z12), narrow(y.z13),
                         narrow(y.z21), narrow(y.z22), narrow(y.z23)};
}

CouplingSolution solve_coupling(const CouplingNetwork& net, double omega) {
    const WideCouplingLegs y = reduce_deltas_wide(net, omega);
    std::vector<WideComplex> a =
        assemble_kvl(y, net.z_g.evaluate_wide(omega), net.z_v.evaluate_wide(omega));
    // Extended precision: I_g and I_s can nearly cancel, and I_CM is their
    // (half) sum, so the sum is taken before narrowing.
    const WideComplexVector x = solve_linear_wide(
        std::move(a), {WideComplex{net.source_amplitude}, WideComplex{}, WideComplex{}});

    CouplingSolution sol;
    sol.i_a = narrow(x[0]);
    sol.i_g = narrow(x[1]);
    sol.i_s = narrow(x[2]);
    sol.i_cm = narrow((x[1] + x[2]) / WideComplex{2.0});
    sol.mu = net.source_amplitude != 0.0 ? sol.i_cm / net.source_amplitude
                                         : coupling_factor_closed_form(net, omega);
    sol.omega = omega;
    return sol;
}

Complex coupling_factor_closed_form(const CouplingNetwork& net, double omega) {
    const WideCouplingLegs y = reduce_deltas_wide(net, omega);
    const WideComplex zg = net.z_g.evaluate_wide(omega);
    const WideComplex zv = net.z_v.evaluate_wide(omega);
    const WideComplex z11 = y.z11, z12 = y.z12, z13 = y.z13;
    const WideComplex z21 = y.z21, z22 = y.z22, z23 = y.z23;

    const WideComplex num = (z11 + z13) * (z12 + z22 + zv) + z13 * (z21 + zg + z11);
    const WideComplex f =
        z11 * z12 * z21 + z11 * z13 * z21 + z11 * z12 * z23 + z12 * z13 * z21 +
        z11 * z13 * z23 + z12 * z13 * z23 + z11 * z21 * z22 + z11 * z21 * z23 +
        z11 * z22 * z23 + z13 * z21 * z22 + z13 * z21 * z23 + z13 * z22 * z23 +
        z11 * z12 * zg + z11 * z13 * zg + z12 * z13 * zg + z11 * z22 * zg +
        z11 * z23 * zg + z13 * z22 * zg + z13 * z23 * zg + z11 * z21 * zv +
        z11 * z23 * zv + z13 * z21 * zv + z13 * z23 * zv + z11 * zg * zv +
        z13 * zg * zv;
    if (!(std::abs(f) > 1e-30L)) {
        throw std::runtime_error("coupling_factor_closed_form: |F| below epsilon");
    }
    return narrow(num / (2.0L * f));
}

std::vector<FrcRow> frc_cm_current(const CouplingNetwork& net, const FrequencyGrid& grid) {
    const std::vector<double> freqs = grid.frequencies();
    std::vector<FrcRow> rows(freqs.size());
    parallel_for(freqs.size(), [&](std::size_t i) {
        const double f = freqs[i];
        try {
            const CouplingSolution sol = solve_coupling(net, 2.0 * M_PI * f);
            rows[i] = FrcRow{f, std::abs(sol.i_cm), std::arg(sol.i_cm)};
        } catch (const std::exception& e) {
            throw std::runtime_error("frc_cm_current at " + std::to_string(f) +
                                     " Hz: " + e.what());
        }
    });
    return rows;
}

}  // namespace gndline

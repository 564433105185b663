#pragma once

#include "gndline/grid.hpp"
#include "gndline/impedance.hpp"
#include "gndline/linalg.hpp"

#include <vector>

namespace gndline {

/// Coupling-stage circuit: an attack source driving the victim ground
/// wire, two parasitic capacitance deltas bridging attacker ground,
/// victim ground and victim signal wire, the victim line impedances and
/// the far-end load.
struct CouplingNetwork {
    double source_amplitude = 0.0;  // Vs, volt

    // first parasitic delta (source end)
    ImpedanceElement z_ga1;  // attacker GND <-> victim GND
    ImpedanceElement z_sa1;  // attacker GND <-> signal wire
    ImpedanceElement z_gs1;  // victim GND <-> signal wire

    // second parasitic delta (load end)
    ImpedanceElement z_ga2;
    ImpedanceElement z_sa2;
    ImpedanceElement z_gs2;

    ImpedanceElement z_g;  // victim GND line impedance
    ImpedanceElement z_s;  // victim signal line impedance
    ImpedanceElement z_v;  // victim load between signal and GND
};

/// Y legs of the two reduced deltas, indexed by the stage convention:
/// z11/z21 attach to the victim GND node, z12/z22 to the signal node,
/// z13/z23 to the attacker GND node.
struct CouplingYLegs {
    Complex z11, z12, z13;
    Complex z21, z22, z23;
};

struct CouplingSolution {
    Complex i_a;   // loop current, attack source side
    Complex i_g;   // current along the victim GND line
    Complex i_s;   // current along the victim signal line
    Complex i_cm;  // (i_g + i_s) / 2
    Complex mu;    // coupling factor, i_cm / Vs
    double omega;
};

CouplingYLegs reduce_deltas(const CouplingNetwork& net, double omega);

/// Assembles the three-loop KVL system and solves for (I_a, I_g, I_s).
/// Loop equations, with the unknown vector [I_a, I_g, I_s]:
///   z11(I_a - I_g) + z13(I_a - I_g - I_s)                    = Vs
///   z11(I_a - I_g) + (z12 + z_v + z22) I_s - (z21 + z_g) I_g = 0
///   (z12 + z_v + z22) I_s + z23(I_s + I_g) - z13(I_a - I_g - I_s) = 0
CouplingSolution solve_coupling(const CouplingNetwork& net, double omega);

/// Coupling factor from the closed-form polynomial expression:
///   mu = [(z11+z13)(z12+z22+z_v) + z13(z21+z_g+z11)] / (2 F)
/// with F the 24-term impedance polynomial. The factor 2 comes from the
/// CM-current definition I_CM = (I_g + I_s)/2; without it the quotient
/// equals (I_g + I_s)/Vs (checked against the loop solve in the tests).
Complex coupling_factor_closed_form(const CouplingNetwork& net, double omega);

/// |I_CM| and phase per grid frequency.
std::vector<FrcRow> frc_cm_current(const CouplingNetwork& net, const FrequencyGrid& grid);

}  // namespace gndline

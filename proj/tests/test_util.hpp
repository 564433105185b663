#pragma once

#include "gndline/conversion.hpp"
#include "gndline/coupling.hpp"

#include <cstdint>
#include <random>

namespace testutil {

using namespace gndline;

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log10(lo), std::log10(hi));
    return std::pow(10.0, u(rng));
}

/// Random series RLC with resistance always present, inductance and
/// capacitance each present with probability 1/2. Magnitudes span the
/// parasitic-to-load range used by the reference network.
inline ImpedanceElement random_element(std::mt19937_64& rng) {
    ImpedanceElement e;
    e.resistance = log_uniform(rng, 1e-2, 1e6);
    e.inductance = (rng() & 1) ? log_uniform(rng, 1e-9, 1e-2) : 0.0;
    if (rng() & 1) e.capacitance = log_uniform(rng, 1e-12, 1e-5);
    return e;
}

inline CouplingNetwork random_coupling(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CouplingNetwork n;
    n.source_amplitude = 300.0;
    n.z_ga1 = random_element(rng);
    n.z_sa1 = random_element(rng);
    n.z_gs1 = random_element(rng);
    n.z_ga2 = random_element(rng);
    n.z_sa2 = random_element(rng);
    n.z_gs2 = random_element(rng);
    n.z_g = random_element(rng);
    n.z_s = random_element(rng);
    n.z_v = random_element(rng);
    return n;
}

inline ConversionNetwork random_conversion(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    ConversionNetwork n;
    n.z_1i = random_element(rng);
    n.z_2i = random_element(rng);
    n.z_3i = random_element(rng);
    n.z_1o = random_element(rng);
    n.z_2o = random_element(rng);
    n.z_3o = random_element(rng);
    n.z_l = random_element(rng);
    n.z_r = random_element(rng);
    return n;
}

inline ImpedanceElement cap_only(double c_farad) {
    ImpedanceElement e;
    e.resistance = 1e6;
    e.inductance = 0.0;
    e.capacitance = c_farad;
    return e;
}

/// Reference coupling network (the shipped scenario parameters).
inline CouplingNetwork reference_coupling() {
    CouplingNetwork n;
    n.source_amplitude = 300.0;
    n.z_ga1 = cap_only(1e-5);
    n.z_sa1 = cap_only(0.99e-5);
    n.z_gs1 = cap_only(1.21e-5);
    n.z_ga2 = cap_only(1.01e-5);
    n.z_sa2 = cap_only(0.98e-5);
    n.z_gs2 = cap_only(1.19e-5);
    n.z_g = ImpedanceElement{0.0001001, 4.43e-6, 0.99e-9};
    n.z_s = ImpedanceElement{0.00099, 5e-6, 1.1e-9};
    n.z_v = ImpedanceElement{1e6, 0.0, {}};
    return n;
}

inline ConversionNetwork reference_conversion() {
    ConversionNetwork n;
    n.z_1i = cap_only(1e-7);
    n.z_2i = cap_only(1.1e-7);
    n.z_3i = cap_only(1.21e-6);
    n.z_1o = cap_only(0.99e-7);
    n.z_2o = cap_only(1.01e-7);
    n.z_3o = cap_only(1.19e-6);
    n.z_l = ImpedanceElement{20.01, 0.049, 1.2e-3};
    n.z_r = ImpedanceElement{19.99, 0.05, 1.1e-3};
    return n;
}

inline ConversionNetwork symmetric_conversion() {
    ConversionNetwork n = reference_conversion();
    n.z_2i = n.z_1i;
    n.z_2o = n.z_1o;
    n.z_r = n.z_l;
    return n;
}

inline double random_omega(std::mt19937_64& rng) {
    return 2.0 * M_PI * log_uniform(rng, 50.0, 500e3);
}

inline double rel_err(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

}  // namespace testutil

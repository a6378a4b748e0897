#pragma once

// Conjugate coherent-pair encoding |alpha> = |sqrt(n) e^{i phi/2}>,
// |beta> = |alpha*>: overlap control, optimal phase, critical photon number
// and saturation of the detection bound.

#include "helstrom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsd {

struct CoherentPairParams {
    double n;   // mean photon number of the displacement, >= 0
    double phi; // relative phase in [0, pi]
};

namespace detail {

inline void require_pair(const CoherentPairParams& cp, const char* fn) {
    if (!(cp.n >= 0.0))
        throw std::domain_error(std::string(fn) + ": photon number n = " +
                                std::to_string(cp.n) + " negative");
    if (!(cp.phi >= 0.0 && cp.phi <= std::numbers::pi))
        throw std::domain_error(std::string(fn) + ": phase phi = " +
                                std::to_string(cp.phi) + " outside [0, pi]");
}

} // namespace detail

// |<alpha|alpha*>|^2 = exp(-4 n sin^2(phi/2)).
inline double overlap_coherent(const CoherentPairParams& cp) {
    detail::require_pair(cp, "overlap_coherent");
    const double s = std::sin(0.5 * cp.phi);
    return std::exp(-4.0 * cp.n * s * s);
}

// Smallest photon number at which the optimal overlap is reachable with the
// maximally separated phase phi = pi.
inline double critical_photon_number(double p) {
    if (!(p > 0.0 && p < 2.0 / 3.0))
        throw std::domain_error("critical_photon_number: p = " +
                                std::to_string(p) +
                                " outside (0, 2/3); optimal overlap is 1 and "
                                "no quantum regime exists");
    return -std::log(optimal_overlap(p)) / 4.0;
}

// Phase achieving the optimal overlap, phi = 2 asin(sqrt(-ln|tau|/(2n))).
// Below the critical photon number the argument exceeds 1 and the best
// available choice is phi = pi (minimal overlap).
inline double phi_opt(double n, double p) {
    if (!(n >= 0.0))
        throw std::domain_error("phi_opt: photon number n = " +
                                std::to_string(n) + " negative");
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("phi_opt: prior p = " + std::to_string(p) +
                                " outside (0, 1)");
    const double t2 = (p < 2.0 / 3.0) ? optimal_overlap(p) : 1.0;
    if (t2 >= 1.0)
        return 0.0; // any phase works; zero separation needed
    if (n == 0.0)
        return std::numbers::pi;
    const double arg = -std::log(t2) / (4.0 * n);
    if (arg > 1.0)
        return std::numbers::pi;
    return 2.0 * std::asin(std::sqrt(arg));
}

// Detection report for the conjugate coherent pair at the optimal phase.
inline TwoStateDetectionReport coherent_success(double n, double p) {
    const double phi = phi_opt(n, p);
    const double t2 = overlap_coherent({n, phi});
    return success_probability(p, helstrom_gamma(t2));
}

} // namespace qsd

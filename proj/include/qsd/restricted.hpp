#pragma once

// Restricted-spoofer scenario: the transmitter sends the squeezed conjugate
// pair while the spoofer, limited to coherent states, replies with |alpha>
// or |alpha*>.  The weighted hypothesis-difference operator lives in the
// span of three pure states; its nonzero eigenvalues solve a real cubic.

#include "gaussian.hpp"
#include "helstrom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace qsd {

struct RestrictedScenario {
    double p;                    // prior probability of a spoofed pulse
    GaussianStateParams phi_state, xi_state; // squeezed transmit pair
    GaussianStateParams spoof_a, spoof_b;    // coherent spoof pair
    double gamma;                // spoofer's discrimination probability
    cxd ov_ab;                   // <alpha|alpha*>
    cxd ov_av;                   // <alpha|phi>
    cxd ov_bv;                   // <alpha*|phi>
};

struct CubicCoefficients {
    double a3, a2, a1, a0; // a3 eta^3 + a2 eta^2 + a1 eta + a0 = 0
};

// Assemble the scenario for prior p and transmit parameters (n, phi, r,
// theta).  The spoof amplitudes are fixed to alpha and alpha*.
inline RestrictedScenario make_restricted_scenario(double p, double n,
                                                   double phi, double r,
                                                   double theta) {
    detail::require_prior(p, "make_restricted_scenario");
    auto [sv, sx] = conjugate_pair(n, phi, r, theta);
    RestrictedScenario s{};
    s.p = p;
    s.phi_state = sv;
    s.xi_state = sx;
    s.spoof_a = GaussianStateParams{sv.alpha, 0.0, 0.0};
    s.spoof_b = GaussianStateParams{std::conj(sv.alpha), 0.0, 0.0};
    const double t2 = std::min(1.0, std::norm(overlap_squeezed(sv, sx)));
    s.gamma = helstrom_gamma(t2);
    s.ov_ab = overlap_squeezed(s.spoof_a, s.spoof_b);
    s.ov_av = overlap_squeezed(s.spoof_a, s.phi_state);
    s.ov_bv = overlap_squeezed(s.spoof_b, s.phi_state);
    return s;
}

// Coefficients of the characteristic cubic of
// p [gamma |a><a| + (1-gamma) |b><b|] - (1-p) |v><v|
// restricted to span{|a>, |b>, |v>}.
inline CubicCoefficients cubic_coefficients(const RestrictedScenario& s) {
    const double p = s.p, g = s.gamma;
    const double ab2 = std::norm(s.ov_ab);
    const double av2 = std::norm(s.ov_av);
    const double bv2 = std::norm(s.ov_bv);
    // Re{<b|v><v|a><a|b>}
    const cxd triple_c = s.ov_bv * std::conj(s.ov_av) * s.ov_ab;
    if (std::abs(triple_c.imag()) > 1e-12 &&
        std::abs(triple_c.imag()) > 1e-12 * std::abs(triple_c))
        throw std::logic_error("cubic_coefficients: triple product has "
                               "unexpected imaginary part");
    const double triple = triple_c.real();

    CubicCoefficients c{};
    c.a3 = -1.0;
    c.a2 = 2.0 * p - 1.0;
    c.a1 = p * (-p * g + p * g * g - p + 1.0) +
           p * p * g * (1.0 - g) * ab2 -
           p * (1.0 - g) * (1.0 - p) * bv2 -
           p * g * (1.0 - p) * av2;
    c.a0 = p * p * g * (1.0 - g) * (1.0 - p) *
           (ab2 + bv2 + av2 - 1.0 - 2.0 * triple);
    return c;
}

// All three real roots of the cubic, descending, via the trigonometric
// (three-real-root) branch.  Inputs stem from a Hermitian operator, so a
// discriminant signalling complex roots beyond tolerance is an error.
inline std::array<double, 3> solve_cubic_real(const CubicCoefficients& c) {
    if (c.a3 == 0.0)
        throw std::domain_error("solve_cubic_real: leading coefficient zero");
    const double b = c.a2 / c.a3, cc = c.a1 / c.a3, d = c.a0 / c.a3;
    // depressed form t^3 + P t + Q with eta = t - b/3
    const double P = cc - b * b / 3.0;
    const double Q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    const double scale = std::max({1.0, std::abs(b), std::abs(cc), std::abs(d)});

    std::array<double, 3> t{};
    if (std::abs(P) < 1e-14 * scale && std::abs(Q) < 1e-14 * scale * scale) {
        t = {0.0, 0.0, 0.0}; // triple root
    } else {
        if (P > 1e-10 * scale)
            throw std::domain_error("solve_cubic_real: complex root pair "
                                    "(depressed quadratic coefficient positive)");
        const double Pn = std::min(P, 0.0);
        const double m = 2.0 * std::sqrt(-Pn / 3.0);
        double u = (m > 0.0) ? 3.0 * Q / (Pn * m) : 0.0;
        if (std::abs(u) > 1.0) {
            if (std::abs(u) > 1.0 + 1e-10)
                throw std::domain_error("solve_cubic_real: discriminant "
                                        "indicates complex roots");
            u = (u > 0.0) ? 1.0 : -1.0;
        }
        const double ang = std::acos(u) / 3.0;
        const double third = 2.0 * std::numbers::pi / 3.0;
        for (int k = 0; k < 3; ++k)
            t[k] = m * std::cos(ang - third * k);
    }

    std::array<double, 3> roots{t[0] - b / 3.0, t[1] - b / 3.0, t[2] - b / 3.0};
    std::sort(roots.begin(), roots.end(), std::greater<>());

    const double coeff_scale = std::max(
        {1.0, std::abs(c.a3), std::abs(c.a2), std::abs(c.a1), std::abs(c.a0)});
    for (double x : roots) {
        const double res =
            std::abs(((c.a3 * x + c.a2) * x + c.a1) * x + c.a0);
        if (res > 1e-10 * coeff_scale)
            throw std::logic_error("solve_cubic_real: root residual " +
                                   std::to_string(res) + " above tolerance");
    }
    return roots;
}

// Detection success probability against the coherent-only spoofer:
// (1 + sum |eta_i|) / 2 over the three cubic roots.
inline double restricted_success(const RestrictedScenario& s) {
    const auto roots = solve_cubic_real(cubic_coefficients(s));
    const double sum =
        std::abs(roots[0]) + std::abs(roots[1]) + std::abs(roots[2]);
    return 0.5 * (1.0 + sum);
}

inline double restricted_success(double p, double n, double phi, double r,
                                 double theta) {
    return restricted_success(make_restricted_scenario(p, n, phi, r, theta));
}

} // namespace qsd

#pragma once

// Closed-form two-hypothesis detection theory for a pair of pure states:
// Helstrom discrimination, detection success probability, the optimal
// spoofer strategy, and the quantum gain over the classical limit.

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsd {

enum class Regime { QuantumBranch, ClassicalBranch };

// Full report for one (prior, discrimination-probability) detection scenario.
struct TwoStateDetectionReport {
    double p;         // prior probability of a spoofed pulse
    double gamma;     // spoofer's state-discrimination probability
    double chi;       // sqrt((1/2 - p)^2 - p(1-g)(pg - 1 + p)(2g - 1)^2)
    double eta_plus;  // 1/2 - p + chi
    double eta_minus; // 1/2 - p - chi
    Regime regime;    // quantum branch iff p < 1/(1 + gamma)
    double ps;        // detection success probability
    double gain;      // ps - max(p, 1 - p)
};

namespace detail {

inline void require_prior(double p, const char* fn) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error(std::string(fn) + ": prior p = " +
                                std::to_string(p) + " outside [0, 1]");
}

inline void require_gamma(double gamma, const char* fn) {
    if (!(gamma >= 0.5 && gamma <= 1.0))
        throw std::domain_error(std::string(fn) + ": gamma = " +
                                std::to_string(gamma) + " outside [1/2, 1]");
}

} // namespace detail

// Helstrom bound: best single-shot discrimination probability between two
// pure states with squared overlap t2.
inline double helstrom_gamma(double t2) {
    if (!(t2 >= 0.0 && t2 <= 1.0))
        throw std::domain_error("helstrom_gamma: overlap-squared t2 = " +
                                std::to_string(t2) + " outside [0, 1]");
    return 0.5 + 0.5 * std::sqrt(1.0 - t2);
}

// chi(p, gamma), the half-splitting of the nonzero eigenvalues of the
// weighted hypothesis-difference operator.  The radicand is non-negative for
// valid inputs; values within -1e-14 of zero are clamped (rounding guard).
inline double chi(double p, double gamma) {
    detail::require_prior(p, "chi");
    detail::require_gamma(gamma, "chi");
    const double half = 0.5 - p;
    const double twog = 2.0 * gamma - 1.0;
    double radicand =
        half * half - p * (1.0 - gamma) * (p * gamma - 1.0 + p) * twog * twog;
    if (radicand < 0.0) {
        if (radicand < -1e-14)
            throw std::logic_error("chi: radicand " + std::to_string(radicand) +
                                   " below clamping tolerance -1e-14");
        radicand = 0.0;
    }
    return std::sqrt(radicand);
}

// Detection success probability against a spoofer that discriminates the two
// transmit states with probability gamma.  Piecewise: 1/2 + chi in the
// quantum regime p < 1/(1 + gamma), otherwise the classical value p.
inline TwoStateDetectionReport success_probability(double p, double gamma) {
    detail::require_prior(p, "success_probability");
    detail::require_gamma(gamma, "success_probability");
    TwoStateDetectionReport rep{};
    rep.p = p;
    rep.gamma = gamma;
    rep.chi = chi(p, gamma);
    rep.eta_plus = 0.5 - p + rep.chi;
    rep.eta_minus = 0.5 - p - rep.chi;
    rep.regime = (p < 1.0 / (1.0 + gamma)) ? Regime::QuantumBranch
                                           : Regime::ClassicalBranch;
    rep.ps = (rep.regime == Regime::QuantumBranch) ? 0.5 + rep.chi : p;
    const double classical = std::max(p, 1.0 - p);
    rep.gain = std::max(0.0, rep.ps - classical);
    return rep;
}

// Discrimination probability the optimal spoofer settles on: the relevant
// root of 16p g^3 - 12(p+1) g^2 + (16 - 6p) g + 4p - 5 = 0.  The p -> 0
// limit is 5/6; for p >= 2/3 no quantum gain exists and the boundary value
// 1/2 (always a root of the cubic) is returned.
inline double gamma_opt(double p) {
    detail::require_prior(p, "gamma_opt");
    if (p == 0.0)
        return 5.0 / 6.0;
    if (p >= 2.0 / 3.0)
        return 0.5;
    const double disc = 33.0 * p * p - 34.0 * p + 9.0;
    if (!(disc > 0.0))
        throw std::logic_error("gamma_opt: discriminant not positive");
    return (p + 3.0 - std::sqrt(disc)) / (8.0 * p);
}

// Squared overlap the transmitter should aim for so that the spoofer's best
// strategy yields gamma_opt(p).  Singular at p = 0; saturates at 1 for
// p >= 2/3 (no quantum regime).
inline double optimal_overlap(double p) {
    detail::require_prior(p, "optimal_overlap");
    if (p == 0.0)
        throw std::domain_error("optimal_overlap: p = 0 is singular; "
                                "use gamma_opt's limit instead");
    if (p >= 2.0 / 3.0)
        return 1.0;
    const double disc = 33.0 * p * p - 34.0 * p + 9.0;
    const double t2 = (26.0 * p - 13.0 * p * p - 9.0 +
                       3.0 * (1.0 - p) * std::sqrt(disc)) /
                      (8.0 * p * p);
    return std::min(1.0, std::max(0.0, t2));
}

// Classical detection limit: what perfect state discrimination achieves.
inline double classical_limit(double p) {
    detail::require_prior(p, "classical_limit");
    return std::max(p, 1.0 - p);
}

// Quantum enhancement of the detection probability over the classical limit.
inline double quantum_gain(double p, double gamma) {
    return success_probability(p, gamma).gain;
}

} // namespace qsd

#pragma once

// Displaced squeezed states |Psi(alpha, zeta)> = D(alpha) S(zeta) |0> with
// zeta = r e^{i theta}: parameterization, the analytic overlap between any
// two such states, and squeezing-decibel conversion.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qsd {

using cxd = std::complex<double>;

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(a, two_pi);
    if (w <= -std::numbers::pi)
        w += two_pi;
    return w;
}

struct GaussianStateParams {
    cxd alpha;    // displacement amplitude
    double r;     // squeezing coefficient, >= 0
    double theta; // squeezing phase in (-pi, pi]
};

namespace detail {

inline void require_squeezing(double r, const char* fn) {
    if (!(r >= 0.0))
        throw std::domain_error(std::string(fn) + ": squeezing r = " +
                                std::to_string(r) + " negative");
    if (r > 20.0)
        throw std::domain_error(std::string(fn) + ": squeezing r = " +
                                std::to_string(r) +
                                " above the hyperbolic-overflow cap 20");
}

} // namespace detail

// Overlap <Psi(a1, z1)|Psi(a2, z2)> of two displaced squeezed states:
//   sigma_kl = cosh r_k cosh r_l - e^{i(theta_k - theta_l)} sinh r_k sinh r_l
//   kappa_kl = (a_k - a_l) cosh r_k + (a_k* - a_l*) e^{i theta_k} sinh r_k
//   overlap  = exp(kappa_21 kappa_12* / (2 sigma_21) + (a2 a1* - a2* a1)/2)
//              / sqrt(sigma_21)
// with the principal branch of the square root.
inline cxd overlap_squeezed(const GaussianStateParams& s1,
                            const GaussianStateParams& s2) {
    detail::require_squeezing(s1.r, "overlap_squeezed");
    detail::require_squeezing(s2.r, "overlap_squeezed");
    const double c1 = std::cosh(s1.r), sh1 = std::sinh(s1.r);
    const double c2 = std::cosh(s2.r), sh2 = std::sinh(s2.r);
    const cxd e1 = std::polar(1.0, s1.theta);
    const cxd e2 = std::polar(1.0, s2.theta);

    const cxd sigma21 = c2 * c1 - e2 * std::conj(e1) * sh2 * sh1;
    if (std::abs(sigma21) < 1e-300)
        throw std::runtime_error("overlap_squeezed: |sigma_21| underflow");

    const cxd d21 = s2.alpha - s1.alpha;
    const cxd d12 = s1.alpha - s2.alpha;
    const cxd kappa21 = d21 * c2 + std::conj(d21) * e2 * sh2;
    const cxd kappa12 = d12 * c1 + std::conj(d12) * e1 * sh1;

    const cxd expo = kappa21 * std::conj(kappa12) / (2.0 * sigma21) +
                     (s2.alpha * std::conj(s1.alpha) -
                      std::conj(s2.alpha) * s1.alpha) / 2.0;
    const cxd ov = std::exp(expo) / std::sqrt(sigma21);
    if (std::abs(ov) > 1.0 + 1e-12)
        throw std::logic_error("overlap_squeezed: magnitude " +
                               std::to_string(std::abs(ov)) + " above 1");
    return ov;
}

// The transmit pair |phi> = |Psi(alpha, zeta)>, |xi> = |Psi(alpha*, zeta*)>
// with alpha = sqrt(n) e^{i phi/2} and zeta = r e^{i theta}.
inline std::pair<GaussianStateParams, GaussianStateParams>
conjugate_pair(double n, double phi, double r, double theta) {
    if (!(n >= 0.0))
        throw std::domain_error("conjugate_pair: photon number n = " +
                                std::to_string(n) + " negative");
    detail::require_squeezing(r, "conjugate_pair");
    const cxd alpha = std::polar(std::sqrt(n), 0.5 * phi);
    const double th = wrap_angle(theta);
    return {GaussianStateParams{alpha, r, th},
            GaussianStateParams{std::conj(alpha), r, wrap_angle(-th)}};
}

// Squeezing in decibels: 10 log10(e^{2r}) = (20 / ln 10) r.
inline double squeezing_db(double r) {
    if (!(r >= 0.0))
        throw std::domain_error("squeezing_db: r = " + std::to_string(r) +
                                " negative");
    return 20.0 * r / std::log(10.0);
}

inline double db_to_r(double db) {
    if (!(db >= 0.0))
        throw std::domain_error("db_to_r: db = " + std::to_string(db) +
                                " negative");
    return db * std::log(10.0) / 20.0;
}

} // namespace qsd

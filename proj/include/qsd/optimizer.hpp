#pragma once

// Maximization of the restricted-spoofer success probability over the free
// angles (phi, theta), with and without the bound-saturation constraint, and
// the parameter-sweep tables built on top of it.

#include "coherent.hpp"
#include "helstrom.hpp"
#include "restricted.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace qsd {

struct OptimizationConfig {
    int grid_phi = 121;           // coarse grid over (0, pi]
    int grid_theta = 121;         // coarse grid over (-pi, pi]
    double refine_tol = 1e-9;     // objective convergence tolerance
    double constraint_tol = 1e-8; // fixed-overlap feasibility tolerance
    int max_refine_iters = 200;
};

struct OptimumReport {
    double phi_star = 0.0;
    double theta_star = 0.0;
    double objective = 0.0;
    bool feasible = true;
    long evaluations = 0;
};

// One table cell: a number, a flag, or a text marker.
using Cell = std::variant<double, bool, std::string>;

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

namespace opt_detail {

inline void require_config(const OptimizationConfig& cfg, const char* fn) {
    if (cfg.grid_phi < 3 || cfg.grid_theta < 3)
        throw std::domain_error(std::string(fn) + ": grid resolutions below 3");
    if (!(cfg.refine_tol > 0.0) || !(cfg.constraint_tol > 0.0))
        throw std::domain_error(std::string(fn) + ": non-positive tolerance");
    if (cfg.max_refine_iters < 1)
        throw std::domain_error(std::string(fn) + ": max_refine_iters < 1");
}

// Map (phi, theta) to the fundamental domain (0, pi] x (-pi, pi] using the
// objective's symmetries F(phi + 2pi, th) = F(phi, th) and
// F(-phi, -th) = F(phi, th).
inline std::array<double, 2> canonical_angles(double phi, double theta) {
    double f = wrap_angle(phi);
    double t = theta;
    if (f < 0.0) {
        f = -f;
        t = -t;
    }
    return {f, wrap_angle(t)};
}

// Nelder-Mead maximization in 2-d from a starting point.  Returns the best
// vertex ever seen; increments `evals` per objective call.
template <typename F>
inline std::array<double, 3> nelder_mead(F&& f, std::array<double, 2> x0,
                                         std::array<double, 2> step,
                                         double tol, int max_iters,
                                         long& evals) {
    using Pt = std::array<double, 2>;
    struct Vertex { Pt x; double v; };
    auto eval = [&](const Pt& x) {
        ++evals;
        return f(x[0], x[1]);
    };
    std::array<Vertex, 3> sx{
        Vertex{x0, eval(x0)},
        Vertex{{x0[0] + step[0], x0[1]}, 0.0},
        Vertex{{x0[0], x0[1] + step[1]}, 0.0}};
    sx[1].v = eval(sx[1].x);
    sx[2].v = eval(sx[2].x);

    auto order = [&]() {
        std::sort(sx.begin(), sx.end(),
                  [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
    };
    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                d = std::max(d, std::hypot(sx[i].x[0] - sx[j].x[0],
                                           sx[i].x[1] - sx[j].x[1]));
        return d;
    };

    for (int iter = 0; iter < max_iters; ++iter) {
        order();
        if (sx[0].v - sx[2].v < tol || diameter() < 1e-10)
            break;
        const Pt c{0.5 * (sx[0].x[0] + sx[1].x[0]),
                   0.5 * (sx[0].x[1] + sx[1].x[1])};
        const Pt xr{c[0] + (c[0] - sx[2].x[0]), c[1] + (c[1] - sx[2].x[1])};
        const double vr = eval(xr);
        if (vr > sx[0].v) {
            const Pt xe{c[0] + 2.0 * (c[0] - sx[2].x[0]),
                        c[1] + 2.0 * (c[1] - sx[2].x[1])};
            const double ve = eval(xe);
            sx[2] = (ve > vr) ? Vertex{xe, ve} : Vertex{xr, vr};
        } else if (vr > sx[1].v) {
            sx[2] = Vertex{xr, vr};
        } else {
            const bool outside = vr > sx[2].v;
            const Pt base = outside ? xr : sx[2].x;
            const Pt xc{c[0] + 0.5 * (base[0] - c[0]),
                        c[1] + 0.5 * (base[1] - c[1])};
            const double vc = eval(xc);
            if (vc > (outside ? vr : sx[2].v)) {
                sx[2] = Vertex{xc, vc};
            } else {
                for (int i = 1; i < 3; ++i) {
                    sx[i].x = {sx[0].x[0] + 0.5 * (sx[i].x[0] - sx[0].x[0]),
                               sx[0].x[1] + 0.5 * (sx[i].x[1] - sx[0].x[1])};
                    sx[i].v = eval(sx[i].x);
                }
            }
        }
    }
    order();
    return {sx[0].x[0], sx[0].x[1], sx[0].v};
}

// Deterministic index-striped parallel map.
template <typename Fn>
inline void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += threads)
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

} // namespace opt_detail

// Maximize restricted_success over (phi, theta) in (0, pi] x (-pi, pi] for
// fixed (n, r, p): coarse grid scan, then simplex refinement from the best
// cell.  Deterministic; ties resolve to the smallest phi, then theta.
inline OptimumReport maximize_restricted(double n, double r, double p,
                                         const OptimizationConfig& cfg = {}) {
    opt_detail::require_config(cfg, "maximize_restricted");
    if (!(n >= 0.0) || !(r >= 0.0))
        throw std::domain_error("maximize_restricted: negative n or r");
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("maximize_restricted: prior p = " +
                                std::to_string(p) + " outside (0, 1)");

    long evals = 0;
    auto objective = [&](double phi, double theta) {
        return restricted_success(p, n, phi, r, theta);
    };

    const double pi = std::numbers::pi;
    const double hphi = pi / cfg.grid_phi;
    const double htheta = 2.0 * pi / cfg.grid_theta;
    double best_phi = hphi, best_theta = -pi + htheta;
    double best_val = -1.0;
    for (int i = 0; i < cfg.grid_phi; ++i) {
        const double phi = hphi * (i + 1);
        for (int j = 0; j < cfg.grid_theta; ++j) {
            const double theta = -pi + htheta * (j + 1);
            ++evals;
            const double v = objective(phi, theta);
            if (v > best_val) {
                best_val = v;
                best_phi = phi;
                best_theta = theta;
            }
        }
    }

    const auto refined = opt_detail::nelder_mead(
        objective, {best_phi, best_theta}, {hphi, htheta}, cfg.refine_tol,
        cfg.max_refine_iters, evals);
    const auto canon = opt_detail::canonical_angles(refined[0], refined[1]);
    ++evals;
    const double canon_val = objective(canon[0], canon[1]);

    OptimumReport rep;
    rep.evaluations = evals;
    rep.feasible = true;
    if (canon_val >= best_val) {
        rep.phi_star = canon[0];
        rep.theta_star = canon[1];
        rep.objective = canon_val;
    } else {
        rep.phi_star = best_phi;
        rep.theta_star = best_theta;
        rep.objective = best_val;
    }
    return rep;
}

// Maximize restricted_success subject to |<phi|xi>|^2 = optimal_overlap(p),
// so the same pair simultaneously saturates the unrestricted-spoofer bound.
// The feasible set is located by bracketing sign changes of the constraint
// residual along both grid directions and bisecting each bracket; the best
// feasible point wins (ties: smallest phi, then theta).
inline OptimumReport maximize_joint(double n, double r, double p,
                                    const OptimizationConfig& cfg = {}) {
    opt_detail::require_config(cfg, "maximize_joint");
    if (!(n >= 0.0) || !(r >= 0.0))
        throw std::domain_error("maximize_joint: negative n or r");
    if (!(p > 0.0 && p < 2.0 / 3.0))
        throw std::domain_error("maximize_joint: prior p = " +
                                std::to_string(p) +
                                " outside (0, 2/3); no finite optimal overlap");

    const double target = optimal_overlap(p);
    long evals = 0;
    auto residual = [&](double phi, double theta) {
        ++evals;
        auto [s1, s2] = conjugate_pair(n, phi, r, theta);
        return std::norm(overlap_squeezed(s1, s2)) - target;
    };

    const double pi = std::numbers::pi;
    const double hphi = pi / cfg.grid_phi;
    const double htheta = 2.0 * pi / cfg.grid_theta;
    std::vector<std::array<double, 2>> candidates;

    auto bisect = [&](double lo, double hi, double flo,
                      auto&& f) { // root of f between lo and hi
        for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0)
                return mid;
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    // theta scan at each fixed phi, with the periodic wrap bracket
    for (int i = 0; i < cfg.grid_phi; ++i) {
        const double phi = hphi * (i + 1);
        std::vector<double> rv(cfg.grid_theta);
        for (int j = 0; j < cfg.grid_theta; ++j)
            rv[j] = residual(phi, -pi + htheta * (j + 1));
        for (int j = 0; j < cfg.grid_theta; ++j) {
            const double ta = -pi + htheta * (j + 1);
            if (rv[j] == 0.0) {
                candidates.push_back({phi, wrap_angle(ta)});
                continue;
            }
            const int k = (j + 1) % cfg.grid_theta;
            const double tb = ta + htheta;
            const double ra = rv[j], rb = rv[k];
            if ((ra < 0.0) != (rb < 0.0)) {
                const double root = bisect(
                    ta, tb, ra, [&](double th) { return residual(phi, th); });
                candidates.push_back({phi, wrap_angle(root)});
            }
        }
    }
    // phi scan at each fixed theta (catches level sets parallel to theta)
    for (int j = 0; j < cfg.grid_theta; ++j) {
        const double theta = -pi + htheta * (j + 1);
        std::vector<double> rv(cfg.grid_phi);
        for (int i = 0; i < cfg.grid_phi; ++i)
            rv[i] = residual(hphi * (i + 1), theta);
        for (int i = 0; i + 1 < cfg.grid_phi; ++i) {
            if (rv[i] == 0.0) {
                candidates.push_back({hphi * (i + 1), theta});
                continue;
            }
            if ((rv[i] < 0.0) != (rv[i + 1] < 0.0)) {
                const double root =
                    bisect(hphi * (i + 1), hphi * (i + 2), rv[i],
                           [&](double f) { return residual(f, theta); });
                candidates.push_back({root, theta});
            }
        }
    }

    std::sort(candidates.begin(), candidates.end());
    OptimumReport rep;
    rep.feasible = false;
    rep.objective = 0.0;
    rep.phi_star = std::numeric_limits<double>::quiet_NaN();
    rep.theta_star = rep.phi_star;
    double best = -1.0;
    for (const auto& c : candidates) {
        if (std::abs(residual(c[0], c[1])) > cfg.constraint_tol)
            continue;
        ++evals;
        const double v = restricted_success(p, n, c[0], r, c[1]);
        if (v > best) {
            best = v;
            rep.phi_star = c[0];
            rep.theta_star = c[1];
            rep.objective = v;
            rep.feasible = true;
        }
    }
    rep.evaluations = evals;
    return rep;
}

// Fig.-4-style table: optimized restricted-spoofer success versus prior.
inline SweepTable sweep_prior(double n, double r,
                              const std::vector<double>& p_grid,
                              const OptimizationConfig& cfg = {},
                              int threads = 1) {
    std::vector<double> ps = p_grid;
    std::sort(ps.begin(), ps.end());
    SweepTable t;
    t.columns = {"p", "r", "ps_bar", "ps_bound", "ps_classical"};
    t.rows.resize(ps.size());
    opt_detail::parallel_for(int(ps.size()), threads, [&](int i) {
        const double p = ps[size_t(i)];
        const double bar = maximize_restricted(n, r, p, cfg).objective;
        t.rows[size_t(i)] = {Cell{p}, Cell{r}, Cell{bar},
                             Cell{success_probability(p, gamma_opt(p)).ps},
                             Cell{classical_limit(p)}};
    });
    return t;
}

// Fig.-3-style table: coherent-pair detection versus photon number.
inline SweepTable sweep_photons(double p, const std::vector<double>& n_grid,
                                const OptimizationConfig& cfg = {},
                                int threads = 1) {
    opt_detail::require_config(cfg, "sweep_photons");
    std::vector<double> ns = n_grid;
    std::sort(ns.begin(), ns.end());
    SweepTable t;
    t.columns = {"n", "phi_opt", "tau2_pi", "tau2_opt", "ps_pi", "ps_opt"};
    t.rows.resize(ns.size());
    opt_detail::parallel_for(int(ns.size()), threads, [&](int i) {
        const double n = ns[size_t(i)];
        const double phi = phi_opt(n, p);
        const double t2_pi = overlap_coherent({n, std::numbers::pi});
        const double t2_opt = overlap_coherent({n, phi});
        t.rows[size_t(i)] = {
            Cell{n}, Cell{phi}, Cell{t2_pi}, Cell{t2_opt},
            Cell{success_probability(p, helstrom_gamma(t2_pi)).ps},
            Cell{success_probability(p, helstrom_gamma(t2_opt)).ps}};
    });
    return t;
}

// Fig.-5-style table: both scenarios (unconstrained and jointly constrained)
// per (n, r).  Infeasible joint rows carry a NaN objective and feasible=false.
inline SweepTable sweep_squeezing(double p, const std::vector<double>& n_list,
                                  const std::vector<double>& r_grid,
                                  const OptimizationConfig& cfg = {},
                                  int threads = 1) {
    std::vector<double> rs = r_grid;
    std::sort(rs.begin(), rs.end());
    SweepTable t;
    t.columns = {"r", "n", "ps_bar_restricted", "ps_unrestricted", "feasible"};
    const int total = int(n_list.size() * rs.size());
    t.rows.resize(size_t(total));
    opt_detail::parallel_for(total, threads, [&](int idx) {
        const double n = n_list[size_t(idx) / rs.size()];
        const double r = rs[size_t(idx) % rs.size()];
        const double bar = maximize_restricted(n, r, p, cfg).objective;
        Cell joint_cell{std::numeric_limits<double>::quiet_NaN()};
        bool feasible = false;
        if (p < 2.0 / 3.0) {
            const OptimumReport joint = maximize_joint(n, r, p, cfg);
            feasible = joint.feasible;
            if (feasible)
                joint_cell = Cell{joint.objective};
        }
        t.rows[size_t(idx)] = {Cell{r}, Cell{n}, Cell{bar}, joint_cell,
                               Cell{feasible}};
    });
    return t;
}

} // namespace qsd

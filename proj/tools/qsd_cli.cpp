// Command-line front end: detection bounds, figure-reproduction sweeps and
// Fock-oracle verification.  Exit codes: 0 success, 1 verification tolerance
// failure, 2 usage error, 3 truncation error.

#include <qsd/qsd.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct CommonOut {
    std::string format; // empty = subcommand default
    std::string out_path;
    int threads = 1;
};

void add_common(CLI::App* sub, CommonOut& c) {
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out_path, "write output to FILE (default stdout)");
    sub->add_option("--threads", c.threads, "sweep parallelism")
        ->check(CLI::Range(1, 256));
}

int emit(const qsd::SweepTable& table, const std::string& command,
         const CommonOut& c, const std::string& default_format) {
    qsd::OutputEnvelope env;
    env.command = command;
    env.generated_at = qsd::iso8601_utc_now();
    env.records = table;
    const std::string fmt = c.format.empty() ? default_format : c.format;
    const std::string text =
        (fmt == "csv") ? qsd::to_csv(env) : qsd::to_json(env);
    if (c.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream f(c.out_path);
    if (!f) {
        std::cerr << "cannot open --out file: " << c.out_path << "\n";
        return 2;
    }
    f << text;
    return 0;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i)
            s += ' ';
        s += argv[i];
    }
    return s;
}

double resolve_r(double r, double db, bool has_db) {
    return has_db ? qsd::db_to_r(db) : r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum limits of spoofing detection for coherent and "
                 "squeezed-state signals"};
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    // bound
    auto* sub_bound = app.add_subcommand(
        "bound", "optimal detection bound quantities at prior p");
    double b_p = 0.5;
    CommonOut b_out;
    sub_bound->add_option("--p", b_p, "prior probability of spoofing")
        ->required();
    add_common(sub_bound, b_out);

    // sweep-fig2
    auto* sub_fig2 = app.add_subcommand(
        "sweep-fig2", "quantum gain over a (p, gamma) grid");
    int f2_psteps = 11, f2_gsteps = 11;
    CommonOut f2_out;
    sub_fig2->add_option("--p-steps", f2_psteps, "grid points in p")
        ->check(CLI::Range(2, 100000));
    sub_fig2->add_option("--gamma-steps", f2_gsteps, "grid points in gamma")
        ->check(CLI::Range(2, 100000));
    add_common(sub_fig2, f2_out);

    // coherent
    auto* sub_coh = app.add_subcommand(
        "coherent", "coherent-pair detection versus photon number");
    double c_p = 0.5, c_nmin = 0.01, c_nmax = 100.0;
    int c_points = 50;
    bool c_log = false;
    CommonOut c_out;
    sub_coh->add_option("--p", c_p, "prior probability of spoofing");
    sub_coh->add_option("--n-min", c_nmin, "smallest photon number");
    sub_coh->add_option("--n-max", c_nmax, "largest photon number");
    sub_coh->add_option("--points", c_points, "number of grid points")
        ->check(CLI::Range(2, 1000000));
    sub_coh->add_flag("--log-spacing", c_log, "logarithmic n spacing");
    add_common(sub_coh, c_out);

    // squeezed
    auto* sub_sq = app.add_subcommand(
        "squeezed", "restricted-spoofer sweeps with squeezed transmit states");
    std::string s_mode;
    double s_p = 0.5;
    std::vector<double> s_n, s_r, s_db;
    int s_psteps = 9;
    CommonOut s_out;
    sub_sq->add_option("--mode", s_mode, "prior-sweep or r-sweep")
        ->required()
        ->check(CLI::IsMember({"prior-sweep", "r-sweep"}));
    sub_sq->add_option("--p", s_p, "prior probability (r-sweep mode)");
    sub_sq->add_option("--n", s_n, "photon numbers (comma separated)")
        ->delimiter(',');
    sub_sq->add_option("--r", s_r, "squeezing coefficients (comma separated)")
        ->delimiter(',');
    sub_sq
        ->add_option("--squeezing-db", s_db,
                     "squeezing in decibels, alternative to --r")
        ->delimiter(',');
    sub_sq->add_option("--p-steps", s_psteps, "prior grid points (prior-sweep)")
        ->check(CLI::Range(1, 100000));
    add_common(sub_sq, s_out);

    // verify
    auto* sub_ver = app.add_subcommand(
        "verify", "analytic formulas versus the truncated-Fock oracle");
    double v_p = 0.5, v_n = 1.0, v_phi = 0.0, v_r = 0.0, v_theta = 0.0;
    double v_tol = 1e-8;
    int v_dim = 0;
    CommonOut v_out;
    sub_ver->add_option("--p", v_p, "prior probability");
    sub_ver->add_option("--n", v_n, "displacement photon number");
    auto* phi_opt_flag =
        sub_ver->add_option("--phi", v_phi, "relative phase (default phi_opt)");
    sub_ver->add_option("--r", v_r, "squeezing coefficient");
    sub_ver->add_option("--theta", v_theta, "squeezing phase");
    sub_ver->add_option("--dim", v_dim,
                        "Fock truncation dimension (default: heuristic)");
    sub_ver->add_option("--trunc-tol", v_tol, "norm-deficit budget");
    add_common(sub_ver, v_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_bound->parsed()) {
            if (!(b_p > 0.0 && b_p < 1.0)) {
                std::cerr << "bound: --p must lie in (0, 1), got " << b_p
                          << "\n";
                return 2;
            }
            const double g = qsd::gamma_opt(b_p);
            const double t2 =
                (b_p < 2.0 / 3.0) ? qsd::optimal_overlap(b_p) : 1.0;
            const auto rep = qsd::success_probability(b_p, g);
            qsd::SweepTable t;
            t.columns = {"p",      "gamma_opt",    "tau2_opt",
                         "ps_opt", "ps_classical", "gain"};
            t.rows = {{qsd::Cell{b_p}, qsd::Cell{g}, qsd::Cell{t2},
                       qsd::Cell{rep.ps}, qsd::Cell{qsd::classical_limit(b_p)},
                       qsd::Cell{rep.gain}}};
            return emit(t, command, b_out, "json");
        }

        if (sub_fig2->parsed()) {
            qsd::SweepTable t;
            t.columns = {"p", "gamma", "gain", "gamma_opt_flag"};
            for (int i = 0; i < f2_psteps; ++i) {
                const double p = double(i) / (f2_psteps - 1);
                const double gopt = qsd::gamma_opt(p);
                int nearest = 0;
                double best = 2.0;
                for (int j = 0; j < f2_gsteps; ++j) {
                    const double g = 0.5 + 0.5 * double(j) / (f2_gsteps - 1);
                    if (std::abs(g - gopt) < best) {
                        best = std::abs(g - gopt);
                        nearest = j;
                    }
                }
                for (int j = 0; j < f2_gsteps; ++j) {
                    const double g = 0.5 + 0.5 * double(j) / (f2_gsteps - 1);
                    t.rows.push_back({qsd::Cell{p}, qsd::Cell{g},
                                      qsd::Cell{qsd::quantum_gain(p, g)},
                                      qsd::Cell{j == nearest}});
                }
            }
            return emit(t, command, f2_out, "csv");
        }

        if (sub_coh->parsed()) {
            if (!(c_nmin > 0.0) || !(c_nmin <= c_nmax)) {
                std::cerr << "coherent: require 0 < --n-min <= --n-max\n";
                return 2;
            }
            if (!(c_p > 0.0 && c_p < 1.0)) {
                std::cerr << "coherent: --p must lie in (0, 1), got " << c_p
                          << "\n";
                return 2;
            }
            std::vector<double> grid(size_t(c_points));
            for (int i = 0; i < c_points; ++i) {
                const double f = double(i) / (c_points - 1);
                grid[size_t(i)] =
                    c_log ? c_nmin * std::pow(c_nmax / c_nmin, f)
                          : c_nmin + f * (c_nmax - c_nmin);
            }
            const auto t = qsd::sweep_photons(c_p, grid, {}, c_out.threads);
            return emit(t, command, c_out, "csv");
        }

        if (sub_sq->parsed()) {
            if (!s_db.empty() && !s_r.empty()) {
                std::cerr << "squeezed: give --r or --squeezing-db, not both\n";
                return 2;
            }
            std::vector<double> rs = s_r;
            if (!s_db.empty()) {
                rs.clear();
                for (double db : s_db)
                    rs.push_back(qsd::db_to_r(db));
            }
            if (s_mode == "prior-sweep") {
                const double n = s_n.empty() ? 100.0 : s_n.front();
                const double r = rs.empty() ? 0.0 : rs.front();
                std::vector<double> ps(size_t(s_psteps));
                for (int i = 1; i <= s_psteps; ++i)
                    ps[size_t(i - 1)] = double(i) / (s_psteps + 1);
                const auto t = qsd::sweep_prior(n, r, ps, {}, s_out.threads);
                return emit(t, command, s_out, "csv");
            }
            const std::vector<double> ns =
                s_n.empty() ? std::vector<double>{100.0} : s_n;
            if (rs.empty())
                rs = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
            if (!(s_p > 0.0 && s_p < 1.0)) {
                std::cerr << "squeezed: --p must lie in (0, 1), got " << s_p
                          << "\n";
                return 2;
            }
            const auto t = qsd::sweep_squeezing(s_p, ns, rs, {}, s_out.threads);
            return emit(t, command, s_out, "csv");
        }

        if (sub_ver->parsed()) {
            if (!(v_p > 0.0 && v_p < 1.0)) {
                std::cerr << "verify: --p must lie in (0, 1), got " << v_p
                          << "\n";
                return 2;
            }
            if (!(v_n >= 0.0)) {
                std::cerr << "verify: --n must be non-negative\n";
                return 2;
            }
            const double phi =
                phi_opt_flag->count() ? v_phi : qsd::phi_opt(v_n, v_p);
            const auto scen =
                qsd::make_restricted_scenario(v_p, v_n, phi, v_r, v_theta);
            const int dim =
                v_dim > 0
                    ? v_dim
                    : std::max(qsd::fock_detail::dim_heuristic(scen.phi_state),
                               qsd::fock_detail::dim_heuristic(scen.xi_state));

            const qsd::cxd ov_a =
                qsd::overlap_squeezed(scen.phi_state, scen.xi_state);
            const qsd::cxd ov_n =
                qsd::overlap_numeric(scen.phi_state, scen.xi_state, dim, v_tol);
            const double g_a = scen.gamma;
            const double g_n =
                qsd::helstrom_gamma(std::min(1.0, std::norm(ov_n)));
            const double ps_a = qsd::restricted_success(scen);
            const double ps_n = qsd::success_probability_numeric(
                v_p, scen.phi_state,
                {{scen.gamma, scen.spoof_a}, {1.0 - scen.gamma, scen.spoof_b}},
                dim, v_tol);

            const double d_ov = std::abs(ov_a - ov_n);
            const double d_g = std::abs(g_a - g_n);
            const double d_ps = std::abs(ps_a - ps_n);
            const bool ok = d_ov < 1e-6 && d_g < 1e-6 && d_ps < 1e-6;

            qsd::SweepTable t;
            t.columns = {"p", "n", "phi", "r", "theta", "dim",
                         "overlap_analytic_re", "overlap_analytic_im",
                         "overlap_numeric_re", "overlap_numeric_im",
                         "overlap_abs_diff", "gamma_analytic", "gamma_numeric",
                         "gamma_abs_diff", "ps_bar_analytic", "ps_bar_numeric",
                         "ps_bar_abs_diff", "within_tolerance"};
            t.rows = {{qsd::Cell{v_p}, qsd::Cell{v_n}, qsd::Cell{phi},
                       qsd::Cell{v_r}, qsd::Cell{v_theta},
                       qsd::Cell{double(dim)}, qsd::Cell{ov_a.real()},
                       qsd::Cell{ov_a.imag()}, qsd::Cell{ov_n.real()},
                       qsd::Cell{ov_n.imag()}, qsd::Cell{d_ov},
                       qsd::Cell{g_a}, qsd::Cell{g_n}, qsd::Cell{d_g},
                       qsd::Cell{ps_a}, qsd::Cell{ps_n}, qsd::Cell{d_ps},
                       qsd::Cell{ok}}};
            const int rc = emit(t, command, v_out, "json");
            if (rc != 0)
                return rc;
            return ok ? 0 : 1;
        }
    } catch (const qsd::truncation_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}

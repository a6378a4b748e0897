#pragma once

// Independent numerical ground truth in a truncated photon-number basis:
// ladder operators, matrix exponentials, state preparation, overlaps,
// Hermitian eigenvalues and the trace-norm success probability.  Dense and
// deliberately brute-force; dimensions stay in the low hundreds.

#include "gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsd {

// Dense complex matrix in the photon-number basis, row-major.
struct FockOperator {
    int dim = 0;
    std::vector<cxd> entries;

    FockOperator() = default;
    explicit FockOperator(int d) : dim(d), entries(size_t(d) * d) {}

    cxd& at(int i, int j) { return entries[size_t(i) * dim + j]; }
    const cxd& at(int i, int j) const { return entries[size_t(i) * dim + j]; }

    static FockOperator identity(int d) {
        FockOperator m(d);
        for (int i = 0; i < d; ++i)
            m.at(i, i) = 1.0;
        return m;
    }
};

// Truncated state vector plus its truncation diagnostic.
struct FockState {
    int dim = 0;
    std::vector<cxd> amplitudes;
    double norm_deficit = 0.0; // 1 - sum |amplitude|^2
};

// Raised when a requested truncation dimension cannot hold the state.
class truncation_error : public std::runtime_error {
public:
    truncation_error(double deficit, int dim, int suggested)
        : std::runtime_error("truncation error: norm deficit " +
                             std::to_string(deficit) + " at dim " +
                             std::to_string(dim) + "; retry with dim >= " +
                             std::to_string(suggested)),
          deficit(deficit), dim(dim), suggested_dim(suggested) {}
    double deficit;
    int dim;
    int suggested_dim;
};

namespace fock_detail {

inline FockOperator multiply(const FockOperator& a, const FockOperator& b) {
    const int d = a.dim;
    FockOperator c(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const cxd aik = a.at(i, k);
            if (aik == cxd{})
                continue;
            const cxd* brow = &b.entries[size_t(k) * d];
            cxd* crow = &c.entries[size_t(i) * d];
            for (int j = 0; j < d; ++j)
                crow[j] += aik * brow[j];
        }
    return c;
}

inline std::vector<cxd> apply(const FockOperator& a, const std::vector<cxd>& v) {
    const int d = a.dim;
    std::vector<cxd> w(d);
    for (int i = 0; i < d; ++i) {
        cxd acc{};
        const cxd* row = &a.entries[size_t(i) * d];
        for (int j = 0; j < d; ++j)
            acc += row[j] * v[j];
        w[i] = acc;
    }
    return w;
}

inline double max_abs(const FockOperator& m) {
    double mx = 0.0;
    for (const cxd& z : m.entries)
        mx = std::max(mx, std::abs(z));
    return mx;
}

// Row-sum (infinity) norm.
inline double inf_norm(const FockOperator& m) {
    double mx = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.dim; ++j)
            s += std::abs(m.at(i, j));
        mx = std::max(mx, s);
    }
    return mx;
}

// Fock dimension comfortably holding |Psi(alpha, zeta)>: displaced squeezed
// states concentrate below (|alpha| e^r)^2 photons.
inline int dim_heuristic(const GaussianStateParams& s) {
    const double root = std::abs(s.alpha) * std::cosh(s.r) + 4.0;
    const int d = int(std::ceil(root * root + 20.0));
    return std::min(d, 256);
}

} // namespace fock_detail

// Annihilation operator: a[k-1, k] = sqrt(k).
inline FockOperator annihilation(int dim) {
    if (dim < 2)
        throw std::domain_error("annihilation: dim = " + std::to_string(dim) +
                                " below 2");
    FockOperator a(dim);
    for (int k = 1; k < dim; ++k)
        a.at(k - 1, k) = std::sqrt(double(k));
    return a;
}

// exp(m) by scaling and squaring with a truncated Taylor series.
inline FockOperator matrix_exponential(const FockOperator& m) {
    for (const cxd& z : m.entries)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("matrix_exponential: non-finite entry");

    const double norm = fock_detail::inf_norm(m);
    int s = 0;
    if (norm > 0.25)
        s = int(std::ceil(std::log2(norm / 0.25)));
    if (s > 60)
        throw std::domain_error("matrix_exponential: norm " +
                                std::to_string(norm) +
                                " exceeds the scaling budget");

    FockOperator a = m;
    const double scale = std::ldexp(1.0, -s);
    for (cxd& z : a.entries)
        z *= scale;

    FockOperator result = FockOperator::identity(m.dim);
    FockOperator term = FockOperator::identity(m.dim);
    for (int k = 1; k <= 80; ++k) {
        term = fock_detail::multiply(term, a);
        const double inv = 1.0 / double(k);
        for (cxd& z : term.entries)
            z *= inv;
        for (size_t i = 0; i < term.entries.size(); ++i)
            result.entries[i] += term.entries[i];
        if (fock_detail::max_abs(term) <
            1e-19 * std::max(1.0, fock_detail::max_abs(result)))
            break;
    }
    for (int i = 0; i < s; ++i)
        result = fock_detail::multiply(result, result);
    return result;
}

// |Psi(alpha, zeta)> = D(alpha) S(zeta) |0> truncated to `dim` amplitudes.
// The exponentials act at a working dimension generous enough to hold the
// state, so the kept amplitudes approximate the exact state's leading
// coefficients and the norm deficit measures the discarded tail.  No
// renormalization is applied; the deficit is the truncation diagnostic.
inline FockState prepare_state(const GaussianStateParams& s, int dim,
                               double trunc_tol = 1e-8) {
    if (dim < 2)
        throw std::domain_error("prepare_state: dim = " + std::to_string(dim) +
                                " below 2");
    detail::require_squeezing(s.r, "prepare_state");
    const int work = std::max(dim, fock_detail::dim_heuristic(s));

    const FockOperator a = annihilation(work);
    FockOperator gen_s(work), gen_d(work);
    const cxd zeta = std::polar(s.r, s.theta);
    // (zeta* a^2 - zeta a†^2) / 2
    const FockOperator a2 = fock_detail::multiply(a, a);
    for (int i = 0; i < work; ++i)
        for (int j = 0; j < work; ++j) {
            const cxd v = a2.at(i, j);
            gen_s.at(i, j) += 0.5 * std::conj(zeta) * v;
            gen_s.at(j, i) -= 0.5 * zeta * std::conj(v);
        }
    // alpha a† - alpha* a
    for (int i = 0; i < work; ++i)
        for (int j = 0; j < work; ++j) {
            const cxd v = a.at(i, j);
            gen_d.at(i, j) -= std::conj(s.alpha) * v;
            gen_d.at(j, i) += s.alpha * std::conj(v);
        }

    std::vector<cxd> v(size_t(work));
    v[0] = 1.0;
    v = fock_detail::apply(matrix_exponential(gen_s), v);
    v = fock_detail::apply(matrix_exponential(gen_d), v);

    FockState st;
    st.dim = dim;
    st.amplitudes.assign(v.begin(), v.begin() + dim);
    double norm2 = 0.0;
    for (const cxd& z : st.amplitudes)
        norm2 += std::norm(z);
    st.norm_deficit = 1.0 - norm2;
    if (st.norm_deficit >= trunc_tol) {
        const double root = std::abs(s.alpha) * std::cosh(s.r) + 4.0;
        const int suggest =
            std::max(2 * dim, int(std::ceil(root * root + 20.0)));
        throw truncation_error(st.norm_deficit, dim, suggest);
    }
    return st;
}

// Brute-force inner product <s1|s2> of the truncated preparations.
inline cxd overlap_numeric(const GaussianStateParams& s1,
                           const GaussianStateParams& s2, int dim,
                           double trunc_tol = 1e-8) {
    const FockState a = prepare_state(s1, dim, trunc_tol);
    const FockState b = prepare_state(s2, dim, trunc_tol);
    cxd acc{};
    for (int k = 0; k < dim; ++k)
        acc += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    return acc;
}

// All eigenvalues of a Hermitian matrix, descending, via cyclic complex
// Jacobi rotations (off-diagonal Frobenius norm driven below 1e-12).
inline std::vector<double> hermitian_eigenvalues(const FockOperator& m) {
    const int d = m.dim;
    double herm_err = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            herm_err = std::max(herm_err,
                                std::abs(m.at(i, j) - std::conj(m.at(j, i))));
    if (herm_err > 1e-12)
        throw std::domain_error("hermitian_eigenvalues: matrix deviates from "
                                "Hermitian by " + std::to_string(herm_err));

    FockOperator a = m;
    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (i != j)
                    s += std::norm(a.at(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > 1e-12; ++sweep) {
        for (int p = 0; p < d - 1; ++p)
            for (int q = p + 1; q < d; ++q) {
                const cxd apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300)
                    continue;
                const cxd phase = apq / mag;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cxd sph = t * c * phase; // s e^{i phi}

                // columns: A <- A J with J = [[c, s e^{i phi}],
                //                             [-s e^{-i phi}, c]]
                for (int i = 0; i < d; ++i) {
                    const cxd aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - std::conj(sph) * aiq;
                    a.at(i, q) = sph * aip + c * aiq;
                }
                // rows: A <- J† A
                for (int j = 0; j < d; ++j) {
                    const cxd apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - sph * aqj;
                    a.at(q, j) = std::conj(sph) * apj + c * aqj;
                }
            }
    }

    std::vector<double> ev(d);
    double trace = 0.0, sum = 0.0;
    for (int i = 0; i < d; ++i) {
        ev[i] = a.at(i, i).real();
        sum += ev[i];
    }
    for (int i = 0; i < d; ++i)
        trace += m.at(i, i).real();
    if (std::abs(sum - trace) >
        1e-10 * std::max(1.0, std::abs(trace)))
        throw std::logic_error("hermitian_eigenvalues: eigenvalue sum "
                               "disagrees with trace");
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

// Eq.-(4)-style trace-norm success probability
// 1/2 + (1/2) || p rho_2 - (1-p) rho_1 ||_1
// with rho_1 = |h1><h1| and rho_2 the given pure-state mixture.
inline double success_probability_numeric(
    double p, const GaussianStateParams& h1_state,
    const std::vector<std::pair<double, GaussianStateParams>>& h2_mixture,
    int dim, double trunc_tol = 1e-8) {
    detail::require_prior(p, "success_probability_numeric");
    double wsum = 0.0;
    for (const auto& [w, st] : h2_mixture) {
        if (w < 0.0)
            throw std::domain_error("success_probability_numeric: negative "
                                    "mixture weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::domain_error("success_probability_numeric: mixture weights "
                                "sum to " + std::to_string(wsum));

    FockOperator op(dim);
    auto add_projector = [&](const GaussianStateParams& s, double weight) {
        const FockState st = prepare_state(s, dim, trunc_tol);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                op.at(i, j) += weight * st.amplitudes[i] *
                               std::conj(st.amplitudes[j]);
    };
    for (const auto& [w, st] : h2_mixture)
        add_projector(st, p * w);
    add_projector(h1_state, -(1.0 - p));

    const std::vector<double> ev = hermitian_eigenvalues(op);
    double abs_sum = 0.0;
    for (double e : ev)
        abs_sum += std::abs(e);
    return 0.5 * (1.0 + abs_sum);
}

} // namespace qsd

#include "specgrowth/linalg.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specgrowth {

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

double SymMatrix::offdiag_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
}

namespace {

// rotation parameters eliminating a_pq (Golub & Van Loan convention)
inline void rotation(double app, double aqq, double apq, double& c, double& s) {
    double theta = (aqq - app) / (2.0 * apq);
    double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    c = 1.0 / std::sqrt(t * t + 1.0);
    s = t * c;
}

std::vector<double> finish(const SymMatrix& a) {
    std::vector<double> ev(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ev[i] = a.at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace

std::vector<double> jacobi_eigenvalues_serial(SymMatrix a, const EigenOptions& opts) {
    const std::size_t n = a.size();
    if (n <= 1) return finish(a);
    const double target = opts.tol_abs + opts.tol_rel * a.frobenius_norm();

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (a.offdiag_norm() <= target) return finish(a);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0.0) continue;
                // skip rotations that can no longer move the diagonal
                if (std::abs(apq) < 1e-300) {
                    a.at(p, q) = a.at(q, p) = 0.0;
                    continue;
                }
                double c, s;
                rotation(a.at(p, p), a.at(q, q), apq, c, s);
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    if (a.offdiag_norm() <= target) return finish(a);
    throw convergence_error("jacobi (serial): iteration budget exhausted after " +
                            std::to_string(opts.max_sweeps) + " sweeps");
}

// Round-robin parallel Jacobi. Each round rotates floor(n/2) disjoint index
// pairs; rotations on disjoint planes commute, so the round equals a single
// two-sided orthogonal update and every entry is written by exactly one
// formula regardless of thread count.
std::vector<double> jacobi_eigenvalues_parallel(SymMatrix a, const EigenOptions& opts) {
    const std::size_t n = a.size();
    if (n <= 1) return finish(a);
    const double target = opts.tol_abs + opts.tol_rel * a.frobenius_norm();

    // tournament scheduling over m slots (m even, last slot = bye when n odd)
    const std::size_t m = (n % 2 == 0) ? n : n + 1;
    std::vector<std::size_t> slot(m);

    std::vector<std::size_t> ps, qs;
    std::vector<double> cs, ss;
    ps.reserve(m / 2);
    qs.reserve(m / 2);

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (a.offdiag_norm() <= target) return finish(a);

        for (std::size_t i = 0; i < m; ++i) slot[i] = i;
        for (std::size_t round = 0; round + 1 < m; ++round) {
            ps.clear();
            qs.clear();
            for (std::size_t i = 0; i < m / 2; ++i) {
                std::size_t x = slot[i], y = slot[m - 1 - i];
                if (x >= n || y >= n) continue; // bye
                std::size_t p = std::min(x, y), q = std::max(x, y);
                if (a.at(p, q) != 0.0 && std::abs(a.at(p, q)) >= 1e-300) {
                    ps.push_back(p);
                    qs.push_back(q);
                }
            }

            const std::size_t r = ps.size();
            cs.assign(r, 1.0);
            ss.assign(r, 0.0);
            for (std::size_t i = 0; i < r; ++i)
                rotation(a.at(ps[i], ps[i]), a.at(qs[i], qs[i]), a.at(ps[i], qs[i]), cs[i], ss[i]);

            // rows: A <- J^T A   (pairs touch disjoint row sets)
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
                for (std::size_t i = 0; i < r; ++i) {
                    double apk = a.at(ps[i], static_cast<std::size_t>(k));
                    double aqk = a.at(qs[i], static_cast<std::size_t>(k));
                    a.at(ps[i], static_cast<std::size_t>(k)) = cs[i] * apk - ss[i] * aqk;
                    a.at(qs[i], static_cast<std::size_t>(k)) = ss[i] * apk + cs[i] * aqk;
                }
            }
            // columns: A <- A J
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
                for (std::size_t i = 0; i < r; ++i) {
                    double akp = a.at(static_cast<std::size_t>(k), ps[i]);
                    double akq = a.at(static_cast<std::size_t>(k), qs[i]);
                    a.at(static_cast<std::size_t>(k), ps[i]) = cs[i] * akp - ss[i] * akq;
                    a.at(static_cast<std::size_t>(k), qs[i]) = ss[i] * akp + cs[i] * akq;
                }
            }

            // advance the tournament: slot 0 fixed, others rotate
            std::size_t last = slot[m - 1];
            for (std::size_t i = m - 1; i >= 2; --i) slot[i] = slot[i - 1];
            slot[1] = last;
        }

        // two-sided float updates drift off exact symmetry; restore it
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double v = 0.5 * (a.at(i, j) + a.at(j, i));
                a.at(i, j) = a.at(j, i) = v;
            }
    }
    if (a.offdiag_norm() <= target) return finish(a);
    throw convergence_error("jacobi (parallel): iteration budget exhausted after " +
                            std::to_string(opts.max_sweeps) + " sweeps");
}

std::vector<double> jacobi_eigenvalues(SymMatrix a, ExecMode mode, const EigenOptions& opts) {
    return mode == ExecMode::Parallel ? jacobi_eigenvalues_parallel(std::move(a), opts)
                                      : jacobi_eigenvalues_serial(std::move(a), opts);
}

} // namespace specgrowth

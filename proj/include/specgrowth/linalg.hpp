#pragma once

#include <cstddef>
#include <vector>

#include "specgrowth/common.hpp"

namespace specgrowth {

// Dense symmetric matrix, full row-major storage. Sizes are desk-scale
// (capped at 4000 by the assemblers), so no packed format.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& at(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    double* data() noexcept { return a_.data(); }
    const double* data() const noexcept { return a_.data(); }

    double trace() const;
    double frobenius_norm() const;
    double offdiag_norm() const; // Frobenius norm of the off-diagonal part

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

struct EigenOptions {
    int max_sweeps = 64;
    // stop when off(A)_F <= tol_abs + tol_rel * ||A||_F
    double tol_abs = 1e-13;
    double tol_rel = 1e-14;
};

// Eigenvalues of a symmetric matrix, ascending. The serial solver is classic
// cyclic-by-rows Jacobi; the parallel one runs round-robin rotation rounds
// (disjoint index pairs commute) with OpenMP over rows/columns. Both throw
// convergence_error when the sweep budget is exhausted.
std::vector<double> jacobi_eigenvalues_serial(SymMatrix a, const EigenOptions& opts = {});
std::vector<double> jacobi_eigenvalues_parallel(SymMatrix a, const EigenOptions& opts = {});
std::vector<double> jacobi_eigenvalues(SymMatrix a, ExecMode mode = ExecMode::Parallel,
                                       const EigenOptions& opts = {});

} // namespace specgrowth

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specgrowth/ball.hpp"
#include "specgrowth/kernel.hpp"
#include "specgrowth/linalg.hpp"

namespace specgrowth {

// Positive-definiteness evidence for one Gram matrix per t. A pass on the
// grid is evidence only, never a proof; reports must carry that caveat.
struct PsdEntry {
    double t;
    double min_eigenvalue;
    bool pass; // min_eigenvalue >= -tolerance
};

struct PsdReport {
    int radius = 0;
    std::size_t ball_size = 0;
    double tolerance = 0.0;
    std::vector<PsdEntry> entries;
    bool all_pass = false;
    std::string evidence = "pass-on-grid"; // grid/ball evidence, not a certificate
};

// Direct conditional-negative-definiteness evidence: max eigenvalue of the
// kernel Gram matrix compressed to the mean-zero subspace.
struct CndReport {
    int radius = 0;
    std::size_t ball_size = 0;
    double tolerance = 0.0;
    double max_restricted_eigenvalue = 0.0;
    bool pass = false;
};

const std::vector<double>& default_t_grid(); // {0.01, 0.1, 0.5, 1, 2, 10}

// Gram matrix M_ij = phi(g_i^-1 g_j) over the ball; exactly symmetric by
// construction (only i <= j is evaluated and mirrored).
SymMatrix assemble_gram(const GroupModel& model, const Ball& ball,
                        const std::function<double(const GroupElement&)>& phi,
                        ExecMode mode = ExecMode::Parallel);
SymMatrix assemble_gram_serial(const GroupModel& model, const Ball& ball,
                               const std::function<double(const GroupElement&)>& phi);

// Schoenberg evidence: e^{-t l} Gram matrices over the ball for each t.
PsdReport schoenberg_check(const GroupPtr& model, const LengthKernel& kernel, int radius,
                           const std::vector<double>& ts = default_t_grid(), double tol = 1e-9,
                           std::size_t cap = default_element_cap(),
                           ExecMode mode = ExecMode::Parallel);

// Direct kernel form of the c.n.d. condition: K_ij = l(g_i^-1 g_j) projected
// by P = I - (1/m) * ones; pass iff max eigenvalue of PKP <= tol.
CndReport direct_cnd_check(const GroupPtr& model, const LengthKernel& kernel, int radius,
                           double tol = 1e-9, std::size_t cap = default_element_cap(),
                           ExecMode mode = ExecMode::Parallel);

// Positive-definiteness evidence for an arbitrary function phi.
PsdReport positive_definite_check(const GroupPtr& model,
                                  const std::function<double(const GroupElement&)>& phi,
                                  int radius, double tol = 1e-9,
                                  std::size_t cap = default_element_cap(),
                                  ExecMode mode = ExecMode::Parallel);

} // namespace specgrowth

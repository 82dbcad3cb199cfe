#pragma once

#include <cstdint>
#include <vector>

#include "specgrowth/ball.hpp"
#include "specgrowth/kernel.hpp"
#include "specgrowth/relative.hpp"

namespace specgrowth {

// Resolvent diagonal of the multiplication generator: omega_eps(s) =
// 1/(1 + eps * l(s)). Monotone decreasing in l(s), equal to 1 at the identity.
struct ResolventDiagonal {
    double epsilon = 1.0;
    double operator()(double ell_value) const { return 1.0 / (1.0 + epsilon * ell_value); }
};

struct EpsilonStep {
    int radius = 0;      // F_k = ball of radius k
    double epsilon = 0.0;
    double max_ell = 0.0; // max kernel value over F_k
};

// Exhaustion by balls F_k = ball(k) with eps_k chosen maximal under
// sup_{F_k} (1 - omega_{eps_k}) <= 2^-k, i.e. eps_k = 2^-k / (M_k (1 - 2^-k))
// when M_k > 0 and 1 by convention otherwise.
struct EpsilonSchedule {
    std::vector<EpsilonStep> steps; // steps[k-1] is level k
};

EpsilonSchedule epsilon_schedule(const GroupPtr& model, const LengthKernel& kernel, int depth,
                                 std::size_t cap = default_element_cap(),
                                 ExecMode mode = ExecMode::Parallel);

// Truncated series l'(s) = sum_{k=1..K} (1 - omega_{eps_k}(s)). For s inside
// F_K the tail over k > K is bounded by 2^-K.
class ReconstructedKernel {
public:
    ReconstructedKernel(GroupPtr model, LengthKernel base, EpsilonSchedule schedule);

    double evaluate(const GroupElement& g) const;
    double evaluate_partial(const GroupElement& g, int depth) const; // first `depth` terms

    // 2^-K for s in F_K; +inf outside the audited exhaustion.
    double truncation_bound(const GroupElement& g) const;

    int depth() const noexcept { return static_cast<int>(schedule_.steps.size()); }
    const EpsilonSchedule& schedule() const noexcept { return schedule_; }
    const LengthKernel& base() const noexcept { return base_; }

    LengthKernel as_kernel() const; // for reuse in the c.n.d. checks

private:
    GroupPtr model_;
    LengthKernel base_;
    EpsilonSchedule schedule_;
};

ReconstructedKernel reconstruct(const GroupPtr& model, const LengthKernel& kernel,
                                const EpsilonSchedule& schedule);

// Audit of the properness argument: Gamma_k = {cosets with omega_{eps_k} >=
// 1/2} computed explicitly for k <= n_levels; every sampled coset outside the
// union must satisfy l'(s) >= n_levels/2 - truncation bound.
struct PropernessAudit {
    int n_levels = 0;
    std::vector<std::uint64_t> gamma_set_sizes;
    bool gamma_sets_complete = false;
    std::uint64_t sampled = 0;
    double min_reconstructed = 0.0;
    double bound = 0.0;
    bool pass = false;
};

PropernessAudit properness_audit(const ReconstructedKernel& lprime, const CosetStructure& cosets,
                                 int n_levels, int sample_radius,
                                 std::size_t cap = default_element_cap(),
                                 ExecMode mode = ExecMode::Parallel);

} // namespace specgrowth

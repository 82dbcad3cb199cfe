#include "specgrowth/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace specgrowth {

EpsilonSchedule epsilon_schedule(const GroupPtr& model, const LengthKernel& kernel, int depth,
                                 std::size_t cap, ExecMode mode) {
    if (depth < 1) throw std::invalid_argument("schedule depth must be >= 1");
    EpsilonSchedule schedule;
    BallEnumerator be(model, cap, mode);
    double max_ell = 0.0;
    std::size_t consumed = 0;
    for (int k = 1; k <= depth; ++k) {
        be.extend_to(k);
        kernel.prepare(k);
        const auto& elements = be.elements();
        for (std::size_t i = consumed; i < elements.size(); ++i)
            max_ell = std::max(max_ell, kernel(elements[i]));
        consumed = elements.size();

        // largest eps with eps*M/(1+eps*M) <= 2^-k over F_k = ball(k)
        double bound = std::pow(2.0, -k);
        double eps = (max_ell > 0.0) ? bound / (max_ell * (1.0 - bound)) : 1.0;
        schedule.steps.push_back({k, eps, max_ell});
    }
    return schedule;
}

ReconstructedKernel::ReconstructedKernel(GroupPtr model, LengthKernel base,
                                         EpsilonSchedule schedule)
    : model_(std::move(model)), base_(std::move(base)), schedule_(std::move(schedule)) {
    if (schedule_.steps.empty()) throw std::invalid_argument("empty epsilon schedule");
}

double ReconstructedKernel::evaluate_partial(const GroupElement& g, int depth) const {
    double ell = base_(g);
    double sum = 0.0;
    int k = 0;
    for (const auto& step : schedule_.steps) {
        if (++k > depth) break;
        sum += 1.0 - ResolventDiagonal{step.epsilon}(ell);
    }
    return sum;
}

double ReconstructedKernel::evaluate(const GroupElement& g) const {
    return evaluate_partial(g, depth());
}

double ReconstructedKernel::truncation_bound(const GroupElement& g) const {
    // inside F_K each term with k > K is <= 2^-k, so the tail is <= 2^-K
    auto len = word_length(model_, g, depth());
    if (!len) return std::numeric_limits<double>::infinity();
    return std::pow(2.0, -depth());
}

LengthKernel ReconstructedKernel::as_kernel() const {
    auto self = std::make_shared<ReconstructedKernel>(*this);
    auto base_copy = base_;
    return LengthKernel(
        "reconstructed(" + base_.label() + ")",
        [self](const GroupElement& g) { return self->evaluate(g); },
        {}, TailModel::none(), false, [base_copy](int h) { base_copy.prepare(h); });
}

ReconstructedKernel reconstruct(const GroupPtr& model, const LengthKernel& kernel,
                                const EpsilonSchedule& schedule) {
    return ReconstructedKernel(model, kernel, schedule);
}

PropernessAudit properness_audit(const ReconstructedKernel& lprime, const CosetStructure& cosets,
                                 int n_levels, int sample_radius, std::size_t cap,
                                 ExecMode mode) {
    if (n_levels < 1) throw std::invalid_argument("audit needs n_levels >= 1");
    if (n_levels > lprime.depth())
        throw std::invalid_argument("audit levels exceed the schedule depth");

    PropernessAudit audit;
    audit.n_levels = n_levels;
    audit.gamma_sets_complete = true;

    const LengthKernel& ell = lprime.base();

    // Gamma_k = {cosets with omega_{eps_k} >= 1/2} = {cosets with l <= 1/eps_k}
    std::unordered_set<GroupElement, GroupElementHash> gamma_union;
    for (int k = 1; k <= n_levels; ++k) {
        double eps = lprime.schedule().steps[static_cast<std::size_t>(k - 1)].epsilon;
        double level = 1.0 / eps;

        // enumerate the sublevel set through the quotient
        BallEnumerator be(cosets.parent(), cap, mode);
        std::unordered_set<GroupElement, GroupElementHash> seen;
        std::uint64_t size = 0;
        bool complete = false;
        std::size_t consumed = 0;
        for (int r = 0;; ++r) {
            be.extend_to(r);
            ell.prepare(r);
            const auto& elements = be.elements();
            for (std::size_t i = consumed; i < elements.size(); ++i) {
                GroupElement rep = cosets.coset_rep(elements[i]);
                if (!seen.insert(rep).second) continue;
                if (ell(rep) <= level) {
                    ++size;
                    gamma_union.insert(rep);
                }
            }
            consumed = elements.size();
            if (be.exhausted() ||
                (cosets.has_quotient_coercivity() && cosets.quotient_coercivity(r + 1) > level)) {
                complete = true;
                break;
            }
            if (r >= sample_radius + 64) break; // no certificate in reach
        }
        audit.gamma_set_sizes.push_back(size);
        audit.gamma_sets_complete = audit.gamma_sets_complete && complete;
    }

    // sample cosets outside the union and check l'(s) >= N/2 - tail
    QuotientBall sample = quotient_ball(cosets, sample_radius, cap, mode);
    double min_lprime = std::numeric_limits<double>::infinity();
    std::uint64_t sampled = 0;
    for (const auto& rep : sample.reps) {
        if (gamma_union.count(rep)) continue;
        ++sampled;
        min_lprime = std::min(min_lprime, lprime.evaluate(rep));
    }
    audit.sampled = sampled;
    audit.min_reconstructed = sampled > 0 ? min_lprime : 0.0;
    audit.bound = static_cast<double>(n_levels) / 2.0 - std::pow(2.0, -lprime.depth());
    audit.pass = audit.gamma_sets_complete && (sampled == 0 || min_lprime >= audit.bound);
    return audit;
}

} // namespace specgrowth

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specgrowth/ball.hpp"
#include "specgrowth/kernel.hpp"
#include "specgrowth/spectral.hpp"

namespace specgrowth {

// A subgroup inclusion H < G given by a membership test and the canonical
// representative of each coset sH. Subgroups are supplied per fixture, not
// discovered. quotient_coercivity, when present, certifies that any coset not
// met by ball(r) has kernel value >= quotient_coercivity(r+1); it is wired by
// the fixture for the (inclusion, kernel) pairs where the bound is known.
class CosetStructure {
public:
    using MemberFn = std::function<bool(const GroupElement&)>;
    using RepFn = std::function<GroupElement(const GroupElement&)>;
    using CoercivityFn = std::function<double(std::int64_t)>;

    CosetStructure(GroupPtr parent, std::string label, MemberFn in_subgroup, RepFn coset_rep,
                   CoercivityFn quotient_coercivity = {});

    const GroupPtr& parent() const noexcept { return parent_; }
    const std::string& label() const noexcept { return label_; }
    bool in_subgroup(const GroupElement& g) const { return member_(g); }
    GroupElement coset_rep(const GroupElement& g) const { return rep_(g); }
    bool has_quotient_coercivity() const noexcept { return static_cast<bool>(coercivity_); }
    double quotient_coercivity(std::int64_t r) const;

private:
    GroupPtr parent_;
    std::string label_;
    MemberFn member_;
    RepFn rep_;
    CoercivityFn coercivity_;
};

// Mini-grammar: trivial | full | axis(i) | cyclic-free(i). The kernel is
// consulted only to transport certificates; pass nullptr to skip them.
CosetStructure parse_inclusion_spec(GroupPtr model, const std::string& spec,
                                    const LengthKernel* kernel = nullptr);

// Distinct cosets met by the parent ball of the given horizon, ordered by
// (minimal member word length, representative encoding).
struct QuotientBall {
    int horizon = 0;
    std::vector<GroupElement> reps;
    std::vector<std::int64_t> min_length; // per rep
};

QuotientBall quotient_ball(const CosetStructure& cosets, int horizon,
                           std::size_t cap = default_element_cap(),
                           ExecMode mode = ExecMode::Parallel);

struct HInvarianceReport {
    int radius = 0;
    double tolerance = 0.0;
    std::size_t h_sample_size = 0;
    bool h_sample_empty = false; // flagged, not fatal
    double max_h_value = 0.0;    // max l over the H-sample (l|_H = 0 check)
    double max_violation = 0.0;  // max |l(sh)-l(s)|, |l(hs)-l(s)|
    bool vanishes_on_h = false;
    bool pass = false;
};

// Checks l(sh) = l(s) = l(hs) for s in the ball and h in H cap ball, plus
// l|_H = 0.
HInvarianceReport h_invariance_check(const CosetStructure& cosets, const LengthKernel& kernel,
                                     int radius, double tol = 1e-9,
                                     std::size_t cap = default_element_cap());

struct PropernessReport {
    double lambda = 0.0;
    std::uint64_t coset_count = 0; // cosets with kernel value <= lambda
    bool complete = false;         // lower-bound-only when false
    int explored_radius = 0;
};

PropernessReport quotient_properness(const CosetStructure& cosets, const LengthKernel& kernel,
                                     double lambda, int max_radius,
                                     std::size_t cap = default_element_cap(),
                                     ExecMode mode = ExecMode::Parallel);

struct QuasiNormalityProbe {
    GroupElement coset_rep;
    std::vector<std::uint64_t> orbit_counts; // per horizon, nondecreasing
    bool growing = false; // strictly increasing across the last three horizons
};

struct QuasiNormalityReport {
    std::vector<int> horizons;
    std::vector<QuasiNormalityProbe> probes;
    bool any_growing = false;
    std::string verdict; // "growing" or "bounded-within-horizon", never a proof
};

QuasiNormalityReport quasi_normality(const CosetStructure& cosets, int probe_radius,
                                     const std::vector<int>& horizons,
                                     std::size_t cap = default_element_cap(),
                                     ExecMode mode = ExecMode::Parallel);

// Relative spectrum: eigenvalues with coset-count multiplicities (each coset
// projection has relative trace one).
struct RelativeSpectrum {
    double cutoff = 0.0;
    std::vector<SpectrumEntry> entries;
    bool complete = false;
    bool exhaustive = false; // every coset enumerated, nothing above cutoff
    int explored_radius = 0;
};

RelativeSpectrum relative_spectrum(const CosetStructure& cosets, const LengthKernel& kernel,
                                   double lambda_max, int max_radius,
                                   std::size_t cap = default_element_cap(),
                                   ExecMode mode = ExecMode::Parallel);

PartitionEstimate relative_partition(const RelativeSpectrum& spec, double t,
                                     const TailModel& tail);

// Certified tail model for the relative counting increments, wired for the
// fixtures where the quotient is understood: H = {e} inherits the kernel's
// tail; axis inclusions on zd(2) with a pullback kernel inherit the target's
// tail through the coordinate section. Everything else gets none.
TailModel transported_tail(const CosetStructure& cosets, const LengthKernel& kernel);

} // namespace specgrowth

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specgrowth/ball.hpp"
#include "specgrowth/kernel.hpp"

namespace specgrowth {

struct SpectrumEntry {
    double value = 0.0;
    std::uint64_t multiplicity = 0;
};

// Sorted eigenvalue/multiplicity pairs of the multiplication generator up to
// a cutoff. complete certifies that every eigenvalue <= cutoff is listed with
// full multiplicity (via the kernel's coercivity bound).
struct SpectrumTruncation {
    double cutoff = 0.0;
    std::vector<SpectrumEntry> entries; // strictly increasing values
    bool complete = false;
    // the whole spectrum is listed (group exhausted, nothing above cutoff);
    // partition tails are then exactly zero
    bool exhaustive = false;
    int explored_radius = 0;

    std::uint64_t total_multiplicity() const;

    // Validated synthetic construction (test fixtures, closed-form spectra).
    static SpectrumTruncation from_entries(double cutoff, std::vector<SpectrumEntry> entries,
                                           bool complete, bool exhaustive = false);
};

// Grouping tolerance for non-integer kernel values.
inline constexpr double kEigenvalueGroupingTol = 1e-9;

SpectrumTruncation spectrum_from_kernel(const GroupPtr& model, const LengthKernel& kernel,
                                        double lambda_max, int max_radius,
                                        std::size_t cap = default_element_cap(),
                                        ExecMode mode = ExecMode::Parallel);

// Counting functions over integer bins: beta[n] counts eigenvalues in [0, n],
// gamma[n] in (n-1, n]. Counts are exact integers. spectral_dimension[i] is
// the log-log slope estimate at n = i+2 (converges to limsup ln beta_n/ln n
// for polynomial profiles and diverges for exponential ones).
struct GrowthProfile {
    std::vector<std::uint64_t> beta;
    std::vector<std::uint64_t> gamma;
    std::vector<double> omega_root;                 // [n] = beta[n]^(1/n), n >= 1; [0] unused = 0
    std::vector<std::optional<double>> omega_ratio; // [n] = gamma[n+1]/gamma[n], n <= N-1
    std::vector<double> spectral_dimension;         // [i] <-> n = i+2
    bool certified = false;                         // complete spectrum behind the counts

    int n_max() const noexcept { return static_cast<int>(beta.size()) - 1; }
};

GrowthProfile growth_profile(const SpectrumTruncation& spec, int n);

// Finite-horizon estimates of the growth rate from the tails of both
// estimator sequences. Never a limit claim.
struct OmegaEstimate {
    double root_estimate = 0.0;
    double ratio_estimate = 0.0;
    int window_begin = 0;
    int window_end = 0;
    std::vector<double> root_window;
    std::vector<double> ratio_window;
    std::string caveat = "finite-horizon estimate";
};

OmegaEstimate omega_estimate(const GrowthProfile& profile, int window = 5);

enum class PartitionVerdict { Finite, Divergent, Unknown };

std::string to_string(PartitionVerdict v);

// Partial heat-trace sum with a certified tail. Finite verdicts bracket the
// true trace in [partial_sum, partial_sum + tail_bound]; divergent verdicts
// carry the lower-bound argument in `certificate`.
struct PartitionEstimate {
    double t = 0.0;
    double partial_sum = 0.0;
    double tail_bound = 0.0; // +inf when no usable bound
    PartitionVerdict verdict = PartitionVerdict::Unknown;
    std::string certificate;
};

PartitionEstimate partition_function(const SpectrumTruncation& spec, double t,
                                     const TailModel& tail);
// Binned variant over gamma counts (lower sandwich of the exact sum).
PartitionEstimate partition_from_profile(const GrowthProfile& profile, double t,
                                         const TailModel& tail);

struct Classification {
    enum class Kind { Polynomial, Subexponential, Exponential, Inconclusive };
    Kind kind = Kind::Inconclusive;
    double estimate = 0.0; // d for Polynomial, Omega for Exponential
    int window_begin = 0;
    int window_end = 0;
    std::vector<double> evidence;
    std::string summary;
};

std::string to_string(Classification::Kind k);

// Decision rule (finite data cannot decide a limsup): the last `window`
// values of the relevant estimator must agree within 5% relative;
// Exponential needs the ratio estimator >= 1.1 throughout, Polynomial needs
// the dimension sequence spread < 0.2; otherwise Subexponential only when
// every partition verdict on the grid is certified finite; else Inconclusive.
Classification classify(const GrowthProfile& profile,
                        const std::vector<PartitionEstimate>& partitions, int window = 5);

} // namespace specgrowth

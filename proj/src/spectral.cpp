#include "specgrowth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specgrowth {

std::uint64_t SpectrumTruncation::total_multiplicity() const {
    std::uint64_t total = 0;
    for (const auto& e : entries) total = checked_add_u64(total, e.multiplicity);
    return total;
}

SpectrumTruncation SpectrumTruncation::from_entries(double cutoff,
                                                    std::vector<SpectrumEntry> entries,
                                                    bool complete, bool exhaustive) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].multiplicity == 0) throw std::invalid_argument("zero multiplicity entry");
        if (entries[i].value < 0.0 || entries[i].value > cutoff)
            throw std::invalid_argument("spectrum entry outside [0, cutoff]");
        if (i > 0 && !(entries[i - 1].value < entries[i].value))
            throw std::invalid_argument("spectrum entries must be strictly increasing");
    }
    SpectrumTruncation s;
    s.cutoff = cutoff;
    s.entries = std::move(entries);
    s.complete = complete;
    s.exhaustive = exhaustive && complete;
    return s;
}

SpectrumTruncation spectrum_from_kernel(const GroupPtr& model, const LengthKernel& kernel,
                                        double lambda_max, int max_radius, std::size_t cap,
                                        ExecMode mode) {
    if (lambda_max < 0.0) throw std::invalid_argument("cutoff must be nonnegative");
    if (max_radius < 0) throw std::invalid_argument("max_radius must be nonnegative");

    BallEnumerator be(model, cap, mode);
    int radius = 0;
    bool complete = false;
    for (;; ++radius) {
        be.extend_to(radius);
        if (be.exhausted()) {
            complete = true; // the whole group was enumerated
            break;
        }
        if (kernel.coercivity(radius + 1) > lambda_max) {
            complete = true; // everything unexplored lies above the cutoff
            break;
        }
        if (radius == max_radius) break;
    }

    kernel.prepare(radius);
    const auto& elements = be.elements();
    std::vector<double> values(elements.size());
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(elements.size()); ++i)
            values[static_cast<std::size_t>(i)] = kernel(elements[static_cast<std::size_t>(i)]);
    } else {
        for (std::size_t i = 0; i < elements.size(); ++i) values[i] = kernel(elements[i]);
    }

    std::vector<double> kept;
    kept.reserve(values.size());
    std::size_t filtered = 0;
    for (double v : values) {
        if (v < 0.0) throw kernel_error("kernel returned a negative value");
        if (v <= lambda_max)
            kept.push_back(v);
        else
            ++filtered;
    }
    std::sort(kept.begin(), kept.end());

    // group identical values exactly; non-integer kernels within tolerance
    const double group_tol = kernel.integer_valued() ? 0.0 : kEigenvalueGroupingTol;
    SpectrumTruncation spec;
    spec.cutoff = lambda_max;
    spec.complete = complete;
    spec.exhaustive = complete && be.exhausted() && filtered == 0;
    spec.explored_radius = radius;
    std::size_t i = 0;
    while (i < kept.size()) {
        std::size_t j = i + 1;
        while (j < kept.size() && kept[j] - kept[i] <= group_tol) ++j;
        spec.entries.push_back({kept[i], static_cast<std::uint64_t>(j - i)});
        i = j;
    }
    return spec;
}

GrowthProfile growth_profile(const SpectrumTruncation& spec, int n) {
    if (n < 0) throw std::invalid_argument("profile horizon must be nonnegative");
    if (static_cast<double>(n) > std::floor(spec.cutoff))
        throw std::invalid_argument("profile horizon exceeds the certified cutoff");

    GrowthProfile p;
    p.certified = spec.complete;
    p.beta.assign(static_cast<std::size_t>(n) + 1, 0);
    p.gamma.assign(static_cast<std::size_t>(n) + 1, 0);

    // integer bins: beta[k] counts values in [0, k], gamma[k] in (k-1, k]
    for (const auto& e : spec.entries) {
        if (e.value > static_cast<double>(n)) continue;
        int bin = static_cast<int>(std::ceil(e.value));
        if (bin < 0) bin = 0;
        p.gamma[static_cast<std::size_t>(bin)] =
            checked_add_u64(p.gamma[static_cast<std::size_t>(bin)], e.multiplicity);
    }
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < p.beta.size(); ++k) {
        acc = checked_add_u64(acc, p.gamma[k]);
        p.beta[k] = acc;
    }

    p.omega_root.assign(p.beta.size(), 0.0);
    for (std::size_t k = 1; k < p.beta.size(); ++k)
        p.omega_root[k] = std::pow(static_cast<double>(p.beta[k]), 1.0 / static_cast<double>(k));

    p.omega_ratio.assign(p.beta.size() > 0 ? p.beta.size() - 1 : 0, std::nullopt);
    for (std::size_t k = 0; k + 1 < p.beta.size(); ++k)
        if (p.gamma[k] > 0)
            p.omega_ratio[k] =
                static_cast<double>(p.gamma[k + 1]) / static_cast<double>(p.gamma[k]);

    // log-log slope estimate of the polynomial growth exponent
    for (std::size_t k = 2; k < p.beta.size(); ++k) {
        double num = std::log(static_cast<double>(p.beta[k]) /
                              static_cast<double>(p.beta[k - 1]));
        double den = std::log(static_cast<double>(k) / static_cast<double>(k - 1));
        p.spectral_dimension.push_back(num / den);
    }
    return p;
}

OmegaEstimate omega_estimate(const GrowthProfile& profile, int window) {
    const int n = profile.n_max();
    if (n < 3) throw std::invalid_argument("omega_estimate needs a profile of length >= 4");
    if (window < 1) throw std::invalid_argument("window must be positive");

    OmegaEstimate est;
    est.window_end = n;
    est.window_begin = std::max(1, n - window + 1);
    for (int k = est.window_begin; k <= est.window_end; ++k)
        est.root_window.push_back(profile.omega_root[static_cast<std::size_t>(k)]);
    est.root_estimate = est.root_window.back();

    // the ratio sequence ends at n-1; skip gamma-zero gaps
    for (int k = est.window_begin - 1; k <= n - 1; ++k) {
        if (k < 0) continue;
        if (auto r = profile.omega_ratio[static_cast<std::size_t>(k)])
            est.ratio_window.push_back(*r);
    }
    est.ratio_estimate = est.ratio_window.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                  : est.ratio_window.back();
    return est;
}

std::string to_string(PartitionVerdict v) {
    switch (v) {
        case PartitionVerdict::Finite: return "finite";
        case PartitionVerdict::Divergent: return "divergent";
        default: return "unknown";
    }
}

namespace {

// certified bound on sum_{n > n0} c n^d e^{-tn}: advance until the term ratio
// (1+1/n)^d e^{-t} drops below 1, then close with a geometric sum
double polynomial_tail_bound(double c, double d, double t, std::int64_t n0) {
    long double sum = 0.0L;
    std::int64_t n = n0 + 1;
    for (;; ++n) {
        long double term = c * std::pow(static_cast<long double>(n), static_cast<long double>(d)) *
                           std::exp(static_cast<long double>(-t) * n);
        double rho = std::pow(1.0 + 1.0 / static_cast<double>(n), d) * std::exp(-t);
        if (rho < 1.0) {
            sum += term / (1.0L - static_cast<long double>(rho));
            break;
        }
        sum += term;
        if (n > n0 + 10'000'000) return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(sum);
}

// shared partition engine over (value, multiplicity) entries; bins beyond
// the cutoff are covered by the tail model, each unseen eigenvalue in bin n
// contributing at most e^{-t(n-1)} = e^t e^{-tn}
PartitionEstimate partition_impl(const std::vector<SpectrumEntry>& entries, double cutoff,
                                 bool complete, bool exhaustive, double t,
                                 const TailModel& tail) {
    if (t <= 0.0) throw std::invalid_argument("partition estimates need t > 0");
    PartitionEstimate out;
    out.t = t;

    long double partial = 0.0L;
    for (const auto& e : entries)
        partial += static_cast<long double>(e.multiplicity) *
                   std::exp(static_cast<long double>(-t) * e.value);
    out.partial_sum = static_cast<double>(partial);

    if (exhaustive) {
        out.verdict = PartitionVerdict::Finite;
        out.tail_bound = 0.0;
        out.certificate = "spectrum fully enumerated";
        return out;
    }

    // divergence is certified by the lower bound alone
    if (tail.kind == TailModel::Kind::Geometric && tail.has_lower && tail.lower_c > 0.0 &&
        tail.ratio * std::exp(-t) >= 1.0) {
        out.verdict = PartitionVerdict::Divergent;
        out.tail_bound = std::numeric_limits<double>::infinity();
        std::ostringstream os;
        os << "gamma_n >= " << tail.lower_c << " * " << tail.ratio
           << "^n and ratio * e^-t >= 1";
        out.certificate = os.str();
        return out;
    }

    if (!complete || tail.kind == TailModel::Kind::None) {
        out.verdict = PartitionVerdict::Unknown;
        out.tail_bound = std::numeric_limits<double>::infinity();
        out.certificate = complete ? "no tail model" : "spectrum truncation not certified";
        return out;
    }

    const std::int64_t n0 = static_cast<std::int64_t>(std::floor(cutoff));
    double bound = std::numeric_limits<double>::infinity();
    std::ostringstream cert;
    if (tail.kind == TailModel::Kind::Geometric) {
        double q = tail.ratio * std::exp(-t);
        if (q < 1.0) {
            bound = std::exp(t) * tail.c * std::pow(q, static_cast<double>(n0 + 1)) / (1.0 - q);
            cert << "geometric tail gamma_n <= " << tail.c << " * " << tail.ratio << "^n";
        }
    } else {
        bound = std::exp(t) * polynomial_tail_bound(tail.c, tail.degree, t, n0);
        cert << "polynomial tail gamma_n <= " << tail.c << " * n^" << tail.degree;
    }

    if (std::isfinite(bound)) {
        out.verdict = PartitionVerdict::Finite;
        out.tail_bound = bound;
        out.certificate = cert.str();
    } else {
        out.verdict = PartitionVerdict::Unknown;
        out.tail_bound = bound;
        out.certificate = "tail model inconclusive at this t";
    }
    return out;
}

} // namespace

PartitionEstimate partition_function(const SpectrumTruncation& spec, double t,
                                     const TailModel& tail) {
    return partition_impl(spec.entries, spec.cutoff, spec.complete, spec.exhaustive, t, tail);
}

PartitionEstimate partition_from_profile(const GrowthProfile& profile, double t,
                                         const TailModel& tail) {
    std::vector<SpectrumEntry> entries;
    for (std::size_t n = 0; n < profile.gamma.size(); ++n)
        if (profile.gamma[n] > 0)
            entries.push_back({static_cast<double>(n), profile.gamma[n]});
    return partition_impl(entries, static_cast<double>(profile.n_max()), profile.certified,
                          false, t, tail);
}

std::string to_string(Classification::Kind k) {
    switch (k) {
        case Classification::Kind::Polynomial: return "polynomial";
        case Classification::Kind::Subexponential: return "subexponential";
        case Classification::Kind::Exponential: return "exponential";
        default: return "inconclusive";
    }
}

Classification classify(const GrowthProfile& profile,
                        const std::vector<PartitionEstimate>& partitions, int window) {
    Classification cls;
    const int n = profile.n_max();
    cls.window_end = n;
    cls.window_begin = std::max(2, n - window + 1);

    auto spread_ok = [](const std::vector<double>& v, double rel) {
        if (v.empty()) return false;
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        double scale = std::max(std::abs(lo), std::abs(hi));
        return scale == 0.0 || (hi - lo) <= rel * scale;
    };

    // ratio estimator over the window
    std::vector<double> ratio_window;
    for (int k = cls.window_begin; k <= n - 1; ++k)
        if (auto r = profile.omega_ratio[static_cast<std::size_t>(k)])
            ratio_window.push_back(*r);

    bool ratio_stable = ratio_window.size() >= 3 && spread_ok(ratio_window, 0.05);
    bool ratio_large = !ratio_window.empty() &&
                       std::all_of(ratio_window.begin(), ratio_window.end(),
                                   [](double r) { return r >= 1.1; });
    if (ratio_stable && ratio_large) {
        cls.kind = Classification::Kind::Exponential;
        cls.estimate = ratio_window.back();
        cls.evidence = ratio_window;
        cls.summary = "ratio estimator stabilized above 1.1 (finite-horizon evidence)";
        return cls;
    }

    // dimension estimator over the window (absolute spread rule)
    std::vector<double> dim_window;
    for (int k = cls.window_begin; k <= n; ++k) {
        int idx = k - 2;
        if (idx >= 0 && idx < static_cast<int>(profile.spectral_dimension.size()))
            dim_window.push_back(profile.spectral_dimension[static_cast<std::size_t>(idx)]);
    }
    if (dim_window.size() >= 3) {
        double lo = *std::min_element(dim_window.begin(), dim_window.end());
        double hi = *std::max_element(dim_window.begin(), dim_window.end());
        if (hi - lo < 0.2 && !ratio_large) {
            cls.kind = Classification::Kind::Polynomial;
            cls.estimate = dim_window.back();
            cls.evidence = dim_window;
            cls.summary = "dimension estimator stabilized (finite-horizon evidence)";
            return cls;
        }
    }

    bool all_finite = !partitions.empty() &&
                      std::all_of(partitions.begin(), partitions.end(),
                                  [](const PartitionEstimate& p) {
                                      return p.verdict == PartitionVerdict::Finite;
                                  });
    if (all_finite && profile.certified) {
        cls.kind = Classification::Kind::Subexponential;
        cls.estimate = 1.0;
        cls.summary = "partition function finite on the grid with certified tails";
        return cls;
    }

    cls.kind = Classification::Kind::Inconclusive;
    cls.summary = "estimators did not stabilize over the evidence window";
    return cls;
}

} // namespace specgrowth

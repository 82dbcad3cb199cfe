#include "specgrowth/relative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace specgrowth {

CosetStructure::CosetStructure(GroupPtr parent, std::string label, MemberFn in_subgroup,
                               RepFn coset_rep, CoercivityFn quotient_coercivity)
    : parent_(std::move(parent)),
      label_(std::move(label)),
      member_(std::move(in_subgroup)),
      rep_(std::move(coset_rep)),
      coercivity_(std::move(quotient_coercivity)) {
    if (!member_(parent_->identity()))
        throw std::invalid_argument("subgroup must contain the identity");
}

double CosetStructure::quotient_coercivity(std::int64_t r) const {
    if (!coercivity_) return 0.0;
    return coercivity_(r);
}

namespace {

// enumerate cosets met by balls of growing radius; reps ordered by
// (first-seen radius, encoding). Shared by quotient_ball, properness and the
// relative spectrum.
struct QuotientEnumeration {
    std::vector<GroupElement> reps;
    std::vector<std::int64_t> min_length;
    int explored_radius = 0;
    bool exhausted = false;
};

QuotientEnumeration enumerate_quotient(const CosetStructure& cosets, int max_radius,
                                       std::size_t cap, ExecMode mode) {
    QuotientEnumeration out;
    BallEnumerator be(cosets.parent(), cap, mode);
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::size_t consumed = 0;
    for (int r = 0; r <= max_radius; ++r) {
        be.extend_to(r);
        const auto& elements = be.elements();
        std::vector<GroupElement> fresh;
        for (std::size_t i = consumed; i < elements.size(); ++i) {
            GroupElement rep = cosets.coset_rep(elements[i]);
            if (seen.insert(rep).second) fresh.push_back(std::move(rep));
        }
        consumed = elements.size();
        std::sort(fresh.begin(), fresh.end());
        for (auto& rep : fresh) {
            out.reps.push_back(std::move(rep));
            out.min_length.push_back(r);
        }
        out.explored_radius = r;
        if (be.exhausted()) {
            out.exhausted = true;
            break;
        }
    }
    return out;
}

} // namespace

QuotientBall quotient_ball(const CosetStructure& cosets, int horizon, std::size_t cap,
                           ExecMode mode) {
    if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
    auto q = enumerate_quotient(cosets, horizon, cap, mode);
    QuotientBall b;
    b.horizon = horizon;
    b.reps = std::move(q.reps);
    b.min_length = std::move(q.min_length);
    return b;
}

HInvarianceReport h_invariance_check(const CosetStructure& cosets, const LengthKernel& kernel,
                                     int radius, double tol, std::size_t cap) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    const auto& model = cosets.parent();
    Ball ball = ball_enumerate(model, radius, cap);
    kernel.prepare(2 * radius);

    HInvarianceReport report;
    report.radius = radius;
    report.tolerance = tol;

    std::vector<GroupElement> h_sample;
    for (const auto& g : ball.elements)
        if (cosets.in_subgroup(g)) h_sample.push_back(g);
    report.h_sample_size = h_sample.size();
    // the identity is always a member; "empty" means no other element in range
    report.h_sample_empty = h_sample.size() <= 1;

    double max_h = 0.0;
    for (const auto& h : h_sample) max_h = std::max(max_h, std::abs(kernel(h)));
    report.max_h_value = max_h;
    report.vanishes_on_h = max_h <= tol;

    double violation = 0.0;
    for (const auto& s : ball.elements) {
        double ls = kernel(s);
        for (const auto& h : h_sample) {
            violation = std::max(violation, std::abs(kernel(model->multiply(s, h)) - ls));
            violation = std::max(violation, std::abs(kernel(model->multiply(h, s)) - ls));
        }
    }
    report.max_violation = violation;
    report.pass = report.vanishes_on_h && violation <= tol;
    return report;
}

PropernessReport quotient_properness(const CosetStructure& cosets, const LengthKernel& kernel,
                                     double lambda, int max_radius, std::size_t cap,
                                     ExecMode mode) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    PropernessReport report;
    report.lambda = lambda;

    BallEnumerator be(cosets.parent(), cap, mode);
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::uint64_t count = 0;
    std::size_t consumed = 0;
    int radius = 0;
    for (;; ++radius) {
        be.extend_to(radius);
        const auto& elements = be.elements();
        kernel.prepare(radius);
        for (std::size_t i = consumed; i < elements.size(); ++i) {
            GroupElement rep = cosets.coset_rep(elements[i]);
            if (seen.insert(rep).second && kernel(rep) <= lambda)
                count = checked_add_u64(count, 1);
        }
        consumed = elements.size();
        if (be.exhausted()) {
            report.complete = true;
            break;
        }
        if (cosets.has_quotient_coercivity() && cosets.quotient_coercivity(radius + 1) > lambda) {
            report.complete = true;
            break;
        }
        if (radius == max_radius) break; // lower-bound-only
    }
    report.coset_count = count;
    report.explored_radius = radius;
    return report;
}

QuasiNormalityReport quasi_normality(const CosetStructure& cosets, int probe_radius,
                                     const std::vector<int>& horizons, std::size_t cap,
                                     ExecMode mode) {
    if (horizons.empty()) throw std::invalid_argument("quasi_normality needs horizons");
    for (std::size_t i = 1; i < horizons.size(); ++i)
        if (horizons[i] <= horizons[i - 1])
            throw std::invalid_argument("horizons must be strictly increasing");

    const auto& model = cosets.parent();
    QuasiNormalityReport report;
    report.horizons = horizons;

    QuotientBall probes = quotient_ball(cosets, probe_radius, cap, mode);

    // H-samples per horizon, from one enumeration of the largest ball
    Ball big = ball_enumerate(model, horizons.back(), cap, mode);
    std::vector<std::vector<GroupElement>> h_samples(horizons.size());
    for (std::size_t i = 0; i < big.elements.size(); ++i) {
        if (!cosets.in_subgroup(big.elements[i])) continue;
        int len = big.length_of_index(i);
        for (std::size_t h = 0; h < horizons.size(); ++h)
            if (len <= horizons[h]) h_samples[h].push_back(big.elements[i]);
    }

    for (const auto& rep : probes.reps) {
        QuasiNormalityProbe probe;
        probe.coset_rep = rep;
        std::unordered_set<GroupElement, GroupElementHash> orbit;
        for (std::size_t h = 0; h < horizons.size(); ++h) {
            // orbit counts are cumulative: extend with the new sample only
            const auto& sample = h_samples[h];
            for (const auto& g : sample) orbit.insert(cosets.coset_rep(model->multiply(g, rep)));
            probe.orbit_counts.push_back(orbit.size());
        }
        std::size_t k = probe.orbit_counts.size();
        probe.growing = k >= 3 && probe.orbit_counts[k - 1] > probe.orbit_counts[k - 2] &&
                        probe.orbit_counts[k - 2] > probe.orbit_counts[k - 3];
        report.any_growing = report.any_growing || probe.growing;
        report.probes.push_back(std::move(probe));
    }
    report.verdict = report.any_growing ? "growing" : "bounded-within-horizon";
    return report;
}

RelativeSpectrum relative_spectrum(const CosetStructure& cosets, const LengthKernel& kernel,
                                   double lambda_max, int max_radius, std::size_t cap,
                                   ExecMode mode) {
    if (lambda_max < 0.0) throw std::invalid_argument("cutoff must be nonnegative");
    RelativeSpectrum spec;
    spec.cutoff = lambda_max;

    BallEnumerator be(cosets.parent(), cap, mode);
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<double> kept;
    std::size_t consumed = 0;
    std::size_t filtered = 0;
    bool certificate_exhaustive = false;
    int radius = 0;
    for (;; ++radius) {
        be.extend_to(radius);
        kernel.prepare(radius);
        const auto& elements = be.elements();
        for (std::size_t i = consumed; i < elements.size(); ++i) {
            GroupElement rep = cosets.coset_rep(elements[i]);
            if (!seen.insert(rep).second) continue;
            double v = kernel(rep);
            if (v < 0.0) throw kernel_error("kernel returned a negative value");
            if (v <= lambda_max)
                kept.push_back(v);
            else
                ++filtered;
        }
        consumed = elements.size();
        if (be.exhausted()) {
            spec.complete = true;
            certificate_exhaustive = true;
            break;
        }
        if (cosets.has_quotient_coercivity() && cosets.quotient_coercivity(radius + 1) > lambda_max) {
            spec.complete = true;
            // an infinite bound says no cosets exist beyond the explored ball
            certificate_exhaustive =
                cosets.quotient_coercivity(radius + 1) == std::numeric_limits<double>::infinity();
            break;
        }
        if (radius == max_radius) break;
    }
    spec.explored_radius = radius;
    spec.exhaustive = spec.complete && certificate_exhaustive && filtered == 0;

    std::sort(kept.begin(), kept.end());
    const double group_tol = kernel.integer_valued() ? 0.0 : kEigenvalueGroupingTol;
    std::size_t i = 0;
    while (i < kept.size()) {
        std::size_t j = i + 1;
        while (j < kept.size() && kept[j] - kept[i] <= group_tol) ++j;
        spec.entries.push_back({kept[i], static_cast<std::uint64_t>(j - i)});
        i = j;
    }
    return spec;
}

PartitionEstimate relative_partition(const RelativeSpectrum& spec, double t,
                                     const TailModel& tail) {
    SpectrumTruncation view;
    view.cutoff = spec.cutoff;
    view.entries = spec.entries;
    view.complete = spec.complete;
    view.exhaustive = spec.exhaustive;
    return partition_function(view, t, tail);
}

TailModel transported_tail(const CosetStructure& cosets, const LengthKernel& kernel) {
    if (cosets.label() == "trivial") return kernel.tail();
    if (cosets.label() == "full") return TailModel::none();
    if (cosets.label().rfind("axis(", 0) == 0 &&
        cosets.parent()->name() == "zd(2)" &&
        kernel.label().rfind("pullback(coord(", 0) == 0) {
        int axis = std::stoi(cosets.label().substr(5, 1));
        int coord = std::stoi(kernel.label().substr(15, 1));
        if (axis != coord) {
            // the section {x_axis = 0} identifies G/H with Z and the relative
            // increments with the target kernel's increments
            try {
                auto pos = kernel.label().find(", ");
                auto target = parse_kernel_spec(
                    make_lattice_group(1),
                    kernel.label().substr(pos + 2, kernel.label().size() - pos - 3));
                return target.tail();
            } catch (const std::exception&) {
                return TailModel::none();
            }
        }
    }
    return TailModel::none();
}

CosetStructure parse_inclusion_spec(GroupPtr model, const std::string& spec,
                                    const LengthKernel* kernel) {
    std::string s = spec;
    // strip whitespace
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }),
            s.end());

    if (s == "trivial") {
        GroupElement e = model->identity();
        CosetStructure::CoercivityFn cf;
        if (kernel && kernel->has_coercivity()) {
            // G/{e} = G: the kernel's own coercivity certifies properness
            auto k = *kernel;
            cf = [k](std::int64_t r) { return k.coercivity(r); };
        }
        return CosetStructure(
            model, "trivial", [e](const GroupElement& g) { return g == e; },
            [](const GroupElement& g) { return g; }, cf);
    }
    if (s == "full") {
        GroupElement e = model->identity();
        return CosetStructure(
            model, "full", [](const GroupElement&) { return true; },
            [e](const GroupElement&) { return e; },
            // single coset, certified at radius 0
            [](std::int64_t) { return std::numeric_limits<double>::infinity(); });
    }
    if (s.rfind("axis(", 0) == 0 && s.back() == ')') {
        if (model->name().rfind("zd(", 0) != 0)
            throw spec_parse_error("axis(i) needs group zd(d)");
        int dim = static_cast<int>(model->generators().size()) / 2;
        int axis = -1;
        try {
            axis = std::stoi(s.substr(5, s.size() - 6));
        } catch (const std::exception&) {
            throw spec_parse_error("axis(i) needs an integer index");
        }
        if (axis < 0 || axis >= dim) throw spec_parse_error("axis index out of range");

        auto member = [model, axis, dim](const GroupElement& g) {
            auto v = model->decode_natural(g);
            for (int i = 0; i < dim; ++i)
                if (i != axis && v[i] != 0) return false;
            return true;
        };
        auto rep = [model, axis](const GroupElement& g) {
            auto v = model->decode_natural(g);
            v[axis] = 0;
            return model->encode_natural(v);
        };
        CosetStructure::CoercivityFn cf;
        if (kernel && dim == 2 && kernel->label().rfind("pullback(coord(", 0) == 0) {
            // d = 2 only: the quotient section is one coordinate, so an unseen
            // coset has |other coordinate| > r and the target coercivity applies
            try {
                int coord = std::stoi(kernel->label().substr(15, 1));
                if (coord != axis) {
                    auto pos = kernel->label().find(", ");
                    auto target = parse_kernel_spec(
                        make_lattice_group(1),
                        kernel->label().substr(pos + 2, kernel->label().size() - pos - 3));
                    if (target.has_coercivity()) {
                        auto k = target;
                        cf = [k](std::int64_t r) { return k.coercivity(r); };
                    }
                }
            } catch (const std::exception&) {
                // no certificate; properness reports stay lower-bound-only
            }
        }
        return CosetStructure(model, s, member, rep, cf);
    }
    if (s.rfind("cyclic-free(", 0) == 0 && s.back() == ')') {
        if (model->name().rfind("free(", 0) != 0)
            throw spec_parse_error("cyclic-free(i) needs group free(k)");
        int rank = static_cast<int>(model->generators().size()) / 2;
        int gen = -1;
        try {
            gen = std::stoi(s.substr(12, s.size() - 13));
        } catch (const std::exception&) {
            throw spec_parse_error("cyclic-free(i) needs an integer generator index");
        }
        if (gen < 1 || gen > rank) throw spec_parse_error("cyclic-free generator out of range");

        auto member = [model, gen](const GroupElement& g) {
            for (std::int64_t letter : model->decode_natural(g))
                if (letter != gen && letter != -gen) return false;
            return true;
        };
        // canonical representative of s<a>: strip the trailing a-power
        auto rep = [model, gen](const GroupElement& g) {
            auto letters = model->decode_natural(g);
            while (!letters.empty() &&
                   (letters.back() == gen || letters.back() == -gen))
                letters.pop_back();
            return model->encode_natural(letters);
        };
        return CosetStructure(model, s, member, rep);
    }
    throw spec_parse_error("unknown inclusion spec '" + spec + "'");
}

} // namespace specgrowth

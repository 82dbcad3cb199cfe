#include "specgrowth/report.hpp"

#include <cmath>
#include <sstream>

namespace specgrowth {

using nlohmann::json;

double report_round(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    // 12 significant digits
    double mag = std::pow(10.0, 11 - std::floor(std::log10(std::abs(x))));
    return std::round(x * mag) / mag;
}

json json_num(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return report_round(x);
}

json to_json(const SpectrumTruncation& spec) {
    json entries = json::array();
    for (const auto& e : spec.entries) entries.push_back({json_num(e.value), e.multiplicity});
    return json{{"cutoff", json_num(spec.cutoff)},
                {"complete", spec.complete},
                {"exhaustive", spec.exhaustive},
                {"explored_radius", spec.explored_radius},
                {"total_multiplicity", spec.total_multiplicity()},
                {"entries", entries}};
}

json to_json(const GrowthProfile& profile) {
    json ratio = json::array();
    for (const auto& r : profile.omega_ratio) ratio.push_back(r ? json_num(*r) : json(nullptr));
    json root = json::array();
    for (std::size_t n = 1; n < profile.omega_root.size(); ++n)
        root.push_back(json_num(profile.omega_root[n]));
    json dim = json::array();
    for (double d : profile.spectral_dimension) dim.push_back(json_num(d));
    return json{{"beta", profile.beta},
                {"gamma", profile.gamma},
                {"omega", {{"root", root}, {"ratio", ratio}}},
                {"spectral_dimension", dim},
                {"certified", profile.certified}};
}

json to_json(const OmegaEstimate& omega) {
    json root = json::array(), ratio = json::array();
    for (double v : omega.root_window) root.push_back(json_num(v));
    for (double v : omega.ratio_window) ratio.push_back(json_num(v));
    return json{{"root_estimate", json_num(omega.root_estimate)},
                {"ratio_estimate", json_num(omega.ratio_estimate)},
                {"window", {omega.window_begin, omega.window_end}},
                {"root_window", root},
                {"ratio_window", ratio},
                {"caveat", omega.caveat}};
}

json to_json(const PartitionEstimate& part) {
    return json{{"t", json_num(part.t)},
                {"partial_sum", json_num(part.partial_sum)},
                {"tail_bound", json_num(part.tail_bound)},
                {"verdict", to_string(part.verdict)},
                {"certificate", part.certificate}};
}

json to_json(const Classification& cls) {
    json evidence = json::array();
    for (double v : cls.evidence) evidence.push_back(json_num(v));
    return json{{"kind", to_string(cls.kind)},
                {"estimate", json_num(cls.estimate)},
                {"window", {cls.window_begin, cls.window_end}},
                {"evidence", evidence},
                {"summary", cls.summary}};
}

json to_json(const PsdReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back({{"t", json_num(e.t)},
                           {"min_eigenvalue", json_num(e.min_eigenvalue)},
                           {"pass", e.pass}});
    return json{{"radius", report.radius},
                {"ball_size", report.ball_size},
                {"tolerance", json_num(report.tolerance)},
                {"entries", entries},
                {"all_pass", report.all_pass},
                {"evidence", report.evidence}};
}

json to_json(const CndReport& report) {
    return json{{"radius", report.radius},
                {"ball_size", report.ball_size},
                {"tolerance", json_num(report.tolerance)},
                {"max_restricted_eigenvalue", json_num(report.max_restricted_eigenvalue)},
                {"pass", report.pass},
                {"evidence", "ball-evidence-only"}};
}

json to_json(const HInvarianceReport& report) {
    return json{{"radius", report.radius},
                {"tolerance", json_num(report.tolerance)},
                {"h_sample_size", report.h_sample_size},
                {"h_sample_empty", report.h_sample_empty},
                {"max_h_value", json_num(report.max_h_value)},
                {"max_violation", json_num(report.max_violation)},
                {"vanishes_on_h", report.vanishes_on_h},
                {"pass", report.pass}};
}

json to_json(const PropernessReport& report) {
    return json{{"lambda", json_num(report.lambda)},
                {"coset_count", report.coset_count},
                {"complete", report.complete},
                {"lower_bound_only", !report.complete},
                {"explored_radius", report.explored_radius}};
}

json to_json(const QuasiNormalityReport& report, const GroupModel& model) {
    json probes = json::array();
    for (const auto& p : report.probes)
        probes.push_back({{"coset", element_text(model, p.coset_rep)},
                          {"orbit_counts", p.orbit_counts},
                          {"growing", p.growing}});
    return json{{"horizons", report.horizons},
                {"probes", probes},
                {"verdict", report.verdict},
                {"horizon_bounded", true}};
}

json to_json(const RelativeSpectrum& spec) {
    json entries = json::array();
    for (const auto& e : spec.entries) entries.push_back({json_num(e.value), e.multiplicity});
    return json{{"cutoff", json_num(spec.cutoff)},
                {"complete", spec.complete},
                {"exhaustive", spec.exhaustive},
                {"explored_radius", spec.explored_radius},
                {"entries", entries}};
}

json to_json(const EpsilonSchedule& schedule) {
    json steps = json::array();
    for (const auto& s : schedule.steps)
        steps.push_back({{"radius", s.radius},
                         {"epsilon", json_num(s.epsilon)},
                         {"max_ell", json_num(s.max_ell)}});
    return json{{"steps", steps}};
}

json to_json(const PropernessAudit& audit) {
    return json{{"n_levels", audit.n_levels},
                {"gamma_set_sizes", audit.gamma_set_sizes},
                {"gamma_sets_complete", audit.gamma_sets_complete},
                {"sampled", audit.sampled},
                {"min_lprime", json_num(audit.min_reconstructed)},
                {"bound", json_num(audit.bound)},
                {"pass", audit.pass}};
}

std::string growth_csv(const GrowthProfile& profile) {
    std::ostringstream os;
    os << "n,beta,gamma,omega_root,omega_ratio\n";
    for (int n = 0; n <= profile.n_max(); ++n) {
        os << n << ',' << profile.beta[static_cast<std::size_t>(n)] << ','
           << profile.gamma[static_cast<std::size_t>(n)] << ',';
        if (n >= 1) os << report_round(profile.omega_root[static_cast<std::size_t>(n)]);
        os << ',';
        if (n < profile.n_max() && profile.omega_ratio[static_cast<std::size_t>(n)])
            os << report_round(*profile.omega_ratio[static_cast<std::size_t>(n)]);
        os << '\n';
    }
    return os.str();
}

std::string dump_report(const json& j) {
    // nlohmann::json with ordered object keys (std::map) is already sorted
    return j.dump(2) + "\n";
}

} // namespace specgrowth

#include "specgrowth/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "specgrowth/report.hpp"

namespace specgrowth::cli {

namespace {

using nlohmann::json;

struct JobSpec {
    std::string command;
    std::string group;
    std::string kernel;
    std::string inclusion;
    int ball_n = 0;
    int profile_n = -1;
    double lambda = -1.0;
    int radius = 4;
    int max_radius = 64;
    int depth = 24;
    int audit_n = 8;
    int probe_radius = 1;
    int sample_radius = 12;
    std::vector<int> horizons = {1, 2, 3};
    std::vector<double> ts;
    double tol = 1e-9;
    std::string format = "json";
    std::string out;
    bool list_elements = false;
    bool serial = false;

    ExecMode mode() const { return serial ? ExecMode::Serial : ExecMode::Parallel; }
    const std::vector<double>& t_grid() const { return ts.empty() ? default_t_grid() : ts; }
};

void emit(const JobSpec& job, const std::string& payload) {
    if (job.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream os(job.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + job.out + "'");
    os << payload;
}

int finish(const JobSpec& job, json report, bool flagged) {
    report["command"] = job.command;
    emit(job, dump_report(report));
    return flagged ? kExitUncertified : kExitOk;
}

int run_ball(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    Ball ball = ball_enumerate(model, job.ball_n, default_element_cap(), job.mode());
    json j{{"group", model->name()},
           {"n", ball.radius},
           {"size", ball.size()},
           {"sphere_sizes", ball.sphere_sizes}};
    if (job.list_elements) {
        json elems = json::array();
        for (const auto& g : ball.elements) elems.push_back(element_text(*model, g));
        j["elements"] = elems;
    }
    return finish(job, std::move(j), false);
}

int run_cnd_check(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    auto kernel = parse_kernel_spec(model, job.kernel);
    auto psd = schoenberg_check(model, kernel, job.radius, job.t_grid(), job.tol,
                                default_element_cap(), job.mode());
    auto cnd = direct_cnd_check(model, kernel, job.radius, job.tol, default_element_cap(),
                                job.mode());
    json j{{"group", model->name()},
           {"kernel", kernel.label()},
           {"schoenberg", to_json(psd)},
           {"direct", to_json(cnd)}};
    return finish(job, std::move(j), false);
}

int run_spectrum(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    auto kernel = parse_kernel_spec(model, job.kernel);
    if (job.lambda < 0.0) throw spec_parse_error("spectrum needs --lambda >= 0");
    auto spec = spectrum_from_kernel(model, kernel, job.lambda, job.max_radius,
                                     default_element_cap(), job.mode());
    json j = to_json(spec);
    j["group"] = model->name();
    j["kernel"] = kernel.label();
    return finish(job, std::move(j), !spec.complete);
}

int run_growth(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    auto kernel = parse_kernel_spec(model, job.kernel);
    if (job.profile_n < 0) throw spec_parse_error("growth needs --N >= 0");
    double lambda = job.lambda >= 0.0 ? job.lambda : static_cast<double>(job.profile_n);
    auto spec = spectrum_from_kernel(model, kernel, lambda, job.max_radius,
                                     default_element_cap(), job.mode());
    auto profile = growth_profile(spec, job.profile_n);

    std::vector<PartitionEstimate> partitions;
    for (double t : job.t_grid()) partitions.push_back(partition_function(spec, t, kernel.tail()));
    auto cls = classify(profile, partitions);

    json j = to_json(spec);
    j.update(to_json(profile));
    j["group"] = model->name();
    j["kernel"] = kernel.label();
    if (profile.n_max() >= 3) j["omega_estimate"] = to_json(omega_estimate(profile));
    json parts = json::array();
    for (const auto& p : partitions) parts.push_back(to_json(p));
    j["partitions"] = parts;
    j["classification"] = to_json(cls);

    if (job.format == "csv") {
        emit(job, growth_csv(profile));
        return spec.complete ? kExitOk : kExitUncertified;
    }
    return finish(job, std::move(j), !spec.complete);
}

int run_partition(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    auto kernel = parse_kernel_spec(model, job.kernel);
    if (job.lambda < 0.0) throw spec_parse_error("partition needs --lambda >= 0");
    auto spec = spectrum_from_kernel(model, kernel, job.lambda, job.max_radius,
                                     default_element_cap(), job.mode());
    json parts = json::array();
    bool unknown = false;
    for (double t : job.t_grid()) {
        auto p = partition_function(spec, t, kernel.tail());
        unknown = unknown || p.verdict == PartitionVerdict::Unknown;
        parts.push_back(to_json(p));
    }
    json j{{"group", model->name()},
           {"kernel", kernel.label()},
           {"cutoff", json_num(spec.cutoff)},
           {"complete", spec.complete},
           {"partitions", parts}};
    return finish(job, std::move(j), !spec.complete || unknown);
}

int run_relative(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    auto kernel = parse_kernel_spec(model, job.kernel);
    if (job.inclusion.empty()) throw spec_parse_error("relative needs --inclusion");
    auto cosets = parse_inclusion_spec(model, job.inclusion, &kernel);

    json j{{"group", model->name()},
           {"kernel", kernel.label()},
           {"inclusion", cosets.label()}};

    auto invariance = h_invariance_check(cosets, kernel, job.radius, job.tol);
    j["invariance"] = to_json(invariance);

    auto quasi = quasi_normality(cosets, job.probe_radius, job.horizons, default_element_cap(),
                                 job.mode());
    j["quasi_normality"] = to_json(quasi, *model);

    bool flagged = !invariance.pass;
    if (invariance.pass) {
        double lambda = job.lambda >= 0.0 ? job.lambda : 5.0;
        auto properness = quotient_properness(cosets, kernel, lambda, job.max_radius,
                                              default_element_cap(), job.mode());
        j["properness"] = to_json(properness);

        auto relspec = relative_spectrum(cosets, kernel, lambda, job.max_radius,
                                         default_element_cap(), job.mode());
        json rel = to_json(relspec);
        j["relative_entries"] = rel["entries"];
        j["relative_spectrum"] = rel;

        TailModel tail = transported_tail(cosets, kernel);
        json parts = json::array();
        bool all_finite = true;
        for (double t : job.t_grid()) {
            auto p = relative_partition(relspec, t, tail);
            all_finite = all_finite && p.verdict == PartitionVerdict::Finite;
            parts.push_back(to_json(p));
        }
        j["relative_partitions"] = parts;

        bool criterion = properness.complete && relspec.complete && all_finite;
        j["relative_amenability_criterion"] = criterion ? "satisfied" : "not-established";
        flagged = flagged || !properness.complete || !relspec.complete;
    } else {
        j["relative_amenability_criterion"] = "not-established";
        j["note"] = "kernel is not H-invariant; quotient diagnostics skipped";
    }
    return finish(job, std::move(j), flagged);
}

int run_reconstruct(const JobSpec& job) {
    auto model = parse_group_spec(job.group);
    auto kernel = parse_kernel_spec(model, job.kernel);
    std::string inclusion = job.inclusion.empty() ? "trivial" : job.inclusion;
    auto cosets = parse_inclusion_spec(model, inclusion, &kernel);

    auto schedule = epsilon_schedule(model, kernel, job.depth, default_element_cap(), job.mode());
    auto lprime = reconstruct(model, kernel, schedule);
    auto audit = properness_audit(lprime, cosets, job.audit_n, job.sample_radius,
                                  default_element_cap(), job.mode());

    json j{{"group", model->name()},
           {"kernel", kernel.label()},
           {"inclusion", cosets.label()},
           {"schedule", to_json(schedule)},
           {"gamma_sets", audit.gamma_set_sizes},
           {"audit", to_json(audit)}};
    return finish(job, std::move(j), !audit.gamma_sets_complete);
}

} // namespace

int run(const std::vector<std::string>& args) {
    JobSpec job;

    CLI::App app{"spectral growth diagnostics for countable discrete groups"};
    app.set_config("--config", "", "flat key = value file; flags override it");
    app.allow_config_extras(false);

    app.add_option("command", job.command,
                   "ball | cnd-check | spectrum | growth | partition | classify | relative | "
                   "reconstruct")
        ->required();
    app.add_option("--group", job.group, "group spec, e.g. free(2), zd(2), heisenberg");
    app.add_option("--kernel", job.kernel, "kernel spec, e.g. wordlength, l2sq, power(3)");
    app.add_option("--inclusion", job.inclusion, "inclusion spec: trivial | full | axis(i) | cyclic-free(i)");
    app.add_option("--n", job.ball_n, "ball radius");
    app.add_option("--N", job.profile_n, "profile horizon");
    app.add_option("--lambda", job.lambda, "spectrum cutoff");
    app.add_option("--radius", job.radius, "check ball radius");
    app.add_option("--max-radius", job.max_radius, "enumeration radius limit");
    app.add_option("--depth", job.depth, "reconstruction depth K");
    app.add_option("--audit-N", job.audit_n, "properness audit levels");
    app.add_option("--probe-radius", job.probe_radius, "quasi-normality probe radius");
    app.add_option("--sample-radius", job.sample_radius, "audit sample radius");
    app.add_option("--horizons", job.horizons, "quasi-normality horizons");
    app.add_option("--t", job.ts, "t grid (repeatable)");
    app.add_option("--tol", job.tol, "eigenvalue tolerance");
    app.add_option("--format", job.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", job.out, "output path (default stdout)");
    app.add_flag("--list", job.list_elements, "list ball elements");
    app.add_flag("--serial", job.serial, "force the serial reference path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (job.command == "ball") return run_ball(job);
        if (job.command == "cnd-check") return run_cnd_check(job);
        if (job.command == "spectrum") return run_spectrum(job);
        if (job.command == "growth" || job.command == "classify") return run_growth(job);
        if (job.command == "partition") return run_partition(job);
        if (job.command == "relative") return run_relative(job);
        if (job.command == "reconstruct") return run_reconstruct(job);
        std::cerr << "unknown command '" << job.command << "'\n";
        return kExitParse;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const spec_parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace specgrowth::cli

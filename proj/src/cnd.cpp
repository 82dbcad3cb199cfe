#include "specgrowth/cnd.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specgrowth {

namespace {

constexpr std::size_t kMaxGramSize = 4000;

void check_gram_size(std::size_t m) {
    if (m > kMaxGramSize) throw resource_limit_error(m, kMaxGramSize);
}

} // namespace

const std::vector<double>& default_t_grid() {
    static const std::vector<double> grid = {0.01, 0.1, 0.5, 1.0, 2.0, 10.0};
    return grid;
}

SymMatrix assemble_gram_serial(const GroupModel& model, const Ball& ball,
                               const std::function<double(const GroupElement&)>& phi) {
    const std::size_t m = ball.size();
    check_gram_size(m);
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) {
        GroupElement gi_inv = model.invert(ball.elements[i]);
        for (std::size_t j = i; j < m; ++j) {
            double v = phi(model.multiply(gi_inv, ball.elements[j]));
            a.at(i, j) = v;
            a.at(j, i) = v;
        }
    }
    return a;
}

SymMatrix assemble_gram(const GroupModel& model, const Ball& ball,
                        const std::function<double(const GroupElement&)>& phi, ExecMode mode) {
    if (mode == ExecMode::Serial) return assemble_gram_serial(model, ball, phi);
    const std::size_t m = ball.size();
    check_gram_size(m);
    SymMatrix a(m);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(m); ++ii) {
        std::size_t i = static_cast<std::size_t>(ii);
        GroupElement gi_inv = model.invert(ball.elements[i]);
        for (std::size_t j = i; j < m; ++j) {
            double v = phi(model.multiply(gi_inv, ball.elements[j]));
            a.at(i, j) = v;
            a.at(j, i) = v;
        }
    }
    return a;
}

PsdReport positive_definite_check(const GroupPtr& model,
                                  const std::function<double(const GroupElement&)>& phi,
                                  int radius, double tol, std::size_t cap, ExecMode mode) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    Ball ball = ball_enumerate(model, radius, cap, mode);
    PsdReport report;
    report.radius = radius;
    report.ball_size = ball.size();
    report.tolerance = tol;
    SymMatrix a = assemble_gram(*model, ball, phi, mode);
    auto ev = jacobi_eigenvalues(std::move(a), mode);
    double min_ev = ev.empty() ? 0.0 : ev.front();
    report.entries.push_back({0.0, min_ev, min_ev >= -tol});
    report.all_pass = report.entries.back().pass;
    return report;
}

PsdReport schoenberg_check(const GroupPtr& model, const LengthKernel& kernel, int radius,
                           const std::vector<double>& ts, double tol, std::size_t cap,
                           ExecMode mode) {
    if (radius < 1) throw std::invalid_argument("schoenberg_check needs radius >= 1");
    if (ts.empty()) throw std::invalid_argument("schoenberg_check needs a nonempty t grid");
    Ball ball = ball_enumerate(model, radius, cap, mode);
    kernel.prepare(2 * radius); // quotients g_i^-1 g_j stay inside ball(2r)

    PsdReport report;
    report.radius = radius;
    report.ball_size = ball.size();
    report.tolerance = tol;

    // one kernel Gram, then exp per t (the kernel evaluation dominates)
    SymMatrix k = assemble_gram(*model, ball,
                                [&kernel](const GroupElement& g) { return kernel(g); }, mode);
    const std::size_t m = ball.size();
    report.all_pass = true;
    for (double t : ts) {
        if (t <= 0.0) throw std::invalid_argument("schoenberg t grid must be positive");
        SymMatrix a(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) a.at(i, j) = std::exp(-t * k.at(i, j));
        auto ev = jacobi_eigenvalues(std::move(a), mode);
        double min_ev = ev.front();
        bool pass = min_ev >= -tol;
        report.entries.push_back({t, min_ev, pass});
        report.all_pass = report.all_pass && pass;
    }
    return report;
}

CndReport direct_cnd_check(const GroupPtr& model, const LengthKernel& kernel, int radius,
                           double tol, std::size_t cap, ExecMode mode) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    Ball ball = ball_enumerate(model, radius, cap, mode);
    kernel.prepare(2 * radius);

    CndReport report;
    report.radius = radius;
    report.ball_size = ball.size();
    report.tolerance = tol;

    SymMatrix k = assemble_gram(*model, ball,
                                [&kernel](const GroupElement& g) { return kernel(g); }, mode);
    const std::size_t m = ball.size();
    if (m == 1) {
        // mean-zero subspace is empty; the compression is the zero matrix
        report.max_restricted_eigenvalue = 0.0;
        report.pass = true;
        return report;
    }

    // P K P with P = I - (1/m) ones, expanded through row sums
    std::vector<double> row_sum(m, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) row_sum[i] += k.at(i, j);
        total += row_sum[i];
    }
    const double dm = static_cast<double>(m);
    SymMatrix pkp(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            pkp.at(i, j) = k.at(i, j) - (row_sum[i] + row_sum[j]) / dm + total / (dm * dm);

    auto ev = jacobi_eigenvalues(std::move(pkp), mode);
    report.max_restricted_eigenvalue = ev.back();
    report.pass = ev.back() <= tol;
    return report;
}

} // namespace specgrowth

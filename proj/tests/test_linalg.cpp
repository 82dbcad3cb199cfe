#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "specgrowth/linalg.hpp"

using namespace specgrowth;

namespace {

SymMatrix random_symmetric(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.at(i, j) = a.at(j, i) = dist(rng);
    return a;
}

void check_close(const std::vector<double>& got, const std::vector<double>& expect, double tol) {
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - expect[i]) <= tol);
}

} // namespace

TEST_CASE("edge sizes") {
    CHECK(jacobi_eigenvalues(SymMatrix(0)).empty());
    SymMatrix one(1);
    one.at(0, 0) = 4.5;
    CHECK(jacobi_eigenvalues(one) == std::vector<double>{4.5});
}

TEST_CASE("diagonal matrix is returned sorted") {
    SymMatrix a(4);
    a.at(0, 0) = 3.0;
    a.at(1, 1) = -1.0;
    a.at(2, 2) = 7.0;
    a.at(3, 3) = 0.0;
    for (auto mode : {ExecMode::Serial, ExecMode::Parallel})
        check_close(jacobi_eigenvalues(a, mode), {-1.0, 0.0, 3.0, 7.0}, 1e-14);
}

TEST_CASE("all-ones matrix has spectrum {0^(m-1), m}") {
    const std::size_t m = 9;
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a.at(i, j) = 1.0;
    for (auto mode : {ExecMode::Serial, ExecMode::Parallel}) {
        auto ev = jacobi_eigenvalues(a, mode);
        for (std::size_t i = 0; i + 1 < m; ++i) CHECK(std::abs(ev[i]) <= 1e-12);
        CHECK(std::abs(ev.back() - static_cast<double>(m)) <= 1e-12);
    }
}

TEST_CASE("tridiagonal (-1, 2, -1) matches the closed-form spectrum") {
    const std::size_t n = 24;
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.at(i, i) = 2.0;
        if (i + 1 < n) a.at(i, i + 1) = a.at(i + 1, i) = -1.0;
    }
    std::vector<double> expect;
    for (std::size_t k = 1; k <= n; ++k)
        expect.push_back(2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k) /
                                              static_cast<double>(n + 1)));
    std::sort(expect.begin(), expect.end());
    check_close(jacobi_eigenvalues_serial(a), expect, 1e-11);
    check_close(jacobi_eigenvalues_parallel(a), expect, 1e-11);
}

TEST_CASE("moment identities on random matrices") {
    for (unsigned seed : {1u, 2u, 3u}) {
        SymMatrix a = random_symmetric(60, seed);
        double fro2 = a.frobenius_norm() * a.frobenius_norm();
        for (auto mode : {ExecMode::Serial, ExecMode::Parallel}) {
            auto ev = jacobi_eigenvalues(a, mode);
            double sum = 0.0, sum2 = 0.0;
            for (double l : ev) {
                sum += l;
                sum2 += l * l;
            }
            CHECK(std::abs(sum - a.trace()) <= 1e-8 * std::max(1.0, std::abs(a.trace())));
            CHECK(std::abs(sum2 - fro2) <= 1e-8 * fro2);
        }
    }
}

TEST_CASE("serial and parallel solvers agree") {
    SymMatrix a = random_symmetric(120, 11);
    auto s = jacobi_eigenvalues_serial(a);
    auto p = jacobi_eigenvalues_parallel(a);
    check_close(s, p, 1e-10);
}

TEST_CASE("parallel solver is run-to-run deterministic") {
    SymMatrix a = random_symmetric(80, 5);
    auto first = jacobi_eigenvalues_parallel(a);
    auto second = jacobi_eigenvalues_parallel(a);
    CHECK(first == second); // bitwise
}

TEST_CASE("exhausted sweep budget raises convergence_error") {
    SymMatrix a = random_symmetric(40, 9);
    EigenOptions opts;
    opts.max_sweeps = 1;
    opts.tol_abs = 0.0;
    opts.tol_rel = 0.0;
    CHECK_THROWS_AS(jacobi_eigenvalues_serial(a, opts), convergence_error);
    CHECK_THROWS_AS(jacobi_eigenvalues_parallel(a, opts), convergence_error);
}

TEST_CASE("odd dimension works in the parallel path") {
    SymMatrix a = random_symmetric(33, 21);
    check_close(jacobi_eigenvalues_parallel(a), jacobi_eigenvalues_serial(a), 1e-10);
}

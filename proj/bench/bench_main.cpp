// Compares the OpenMP kernels against the serial reference paths and checks
// that both produce the same results.

#include <cmath>
#include <cstdio>
#include <random>

#include <omp.h>

#include "specgrowth/ball.hpp"
#include "specgrowth/cnd.hpp"
#include "specgrowth/kernel.hpp"
#include "specgrowth/linalg.hpp"

using namespace specgrowth;

namespace {

struct Timed {
    double seconds;
    double checksum;
};

template <typename F>
Timed timed(F&& f) {
    double t0 = omp_get_wtime();
    double checksum = f();
    return {omp_get_wtime() - t0, checksum};
}

void row(const char* name, Timed serial, Timed parallel) {
    double diff = std::abs(serial.checksum - parallel.checksum);
    std::printf("%-28s %10.3fs %10.3fs %7.2fx   |delta| = %.3e\n", name, serial.seconds,
                parallel.seconds, serial.seconds / parallel.seconds, diff);
}

SymMatrix random_symmetric(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.at(i, j) = a.at(j, i) = dist(rng);
    return a;
}

} // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    { // ball enumeration, exponential group
        auto f2 = make_free_group(2);
        auto serial = timed([&] {
            return static_cast<double>(ball_enumerate(f2, 10, 10'000'000, ExecMode::Serial).size());
        });
        auto parallel = timed([&] {
            return static_cast<double>(
                ball_enumerate(f2, 10, 10'000'000, ExecMode::Parallel).size());
        });
        row("ball F_2 r=10", serial, parallel);
    }

    { // ball enumeration, nilpotent group (BFS word lengths, no closed form)
        auto h = make_heisenberg_group();
        auto serial = timed([&] {
            return static_cast<double>(ball_enumerate(h, 16, 10'000'000, ExecMode::Serial).size());
        });
        auto parallel = timed([&] {
            return static_cast<double>(
                ball_enumerate(h, 16, 10'000'000, ExecMode::Parallel).size());
        });
        row("ball heisenberg r=16", serial, parallel);
    }

    { // Gram assembly over a Z^2 ball
        auto z2 = make_lattice_group(2);
        auto kernel = l2sq_kernel(z2);
        Ball ball = ball_enumerate(z2, 30);
        auto phi = [&](const GroupElement& g) { return std::exp(-0.5 * kernel(g)); };
        auto serial = timed([&] { return assemble_gram_serial(*z2, ball, phi).trace(); });
        auto parallel = timed(
            [&] { return assemble_gram(*z2, ball, phi, ExecMode::Parallel).trace(); });
        row("gram Z^2 r=30 (m=1861)", serial, parallel);
    }

    { // Jacobi eigensolver
        SymMatrix a = random_symmetric(600, 42);
        auto serial = timed([&] { return jacobi_eigenvalues_serial(a).back(); });
        auto parallel = timed([&] { return jacobi_eigenvalues_parallel(a).back(); });
        row("jacobi random 600x600", serial, parallel);
    }

    { // Jacobi on a structured Gram matrix
        auto z1 = make_lattice_group(1);
        auto k = power_kernel(z1, 1.0);
        Ball ball = ball_enumerate(z1, 400);
        auto phi = [&](const GroupElement& g) { return std::exp(-k(g)); };
        SymMatrix a = assemble_gram(*z1, ball, phi);
        auto serial = timed([&] { return jacobi_eigenvalues_serial(a).front(); });
        auto parallel = timed([&] { return jacobi_eigenvalues_parallel(a).front(); });
        row("jacobi gram 801x801", serial, parallel);
    }

    return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "specgrowth/cnd.hpp"
#include "specgrowth/kernel.hpp"

using namespace specgrowth;

TEST_CASE("kernel axioms on the built-ins") {
    struct Fixture {
        GroupPtr model;
        LengthKernel kernel;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({make_lattice_group(1), power_kernel(make_lattice_group(1), 1.0)});
    fixtures.push_back({make_lattice_group(2), l2sq_kernel(make_lattice_group(2))});
    fixtures.push_back({make_free_group(2), wordlength_kernel(make_free_group(2))});
    fixtures.push_back({make_heisenberg_group(), wordlength_kernel(make_heisenberg_group())});

    for (auto& [model, kernel] : fixtures) {
        kernel.prepare(4);
        CHECK(kernel(model->identity()) == 0.0);
        Ball b = ball_enumerate(model, 4);
        std::size_t offset = 0;
        for (std::size_t len = 0; len < b.sphere_sizes.size(); ++len) {
            for (std::size_t i = offset; i < offset + b.sphere_sizes[len]; ++i) {
                const auto& g = b.elements[i];
                CHECK(kernel(g) == kernel(model->invert(g)));
                CHECK(kernel(g) >= kernel.coercivity(static_cast<std::int64_t>(len)) - 1e-12);
            }
            offset += b.sphere_sizes[len];
        }
    }
}

TEST_CASE("schoenberg on Z with the word metric, radius 5, t = 1") {
    auto z = make_lattice_group(1);
    auto k = power_kernel(z, 1.0);
    auto report = schoenberg_check(z, k, 5, {1.0});
    CHECK(report.ball_size == 11);
    CHECK(report.all_pass);
    // e^{-|i-j|} is strictly positive definite
    CHECK(report.entries[0].min_eigenvalue > 0.0);
}

TEST_CASE("schoenberg on F_2 word length passes the default grid") {
    auto f2 = make_free_group(2);
    auto k = wordlength_kernel(f2);
    auto report = schoenberg_check(f2, k, 3);
    CHECK(report.ball_size == 53);
    CHECK(report.all_pass);
    for (const auto& e : report.entries) CHECK(e.min_eigenvalue >= -1e-9);
}

TEST_CASE("|n|^3 on Z fails schoenberg on the default grid") {
    auto z = make_lattice_group(1);
    auto k = power_kernel(z, 3.0);
    auto report = schoenberg_check(z, k, 6);
    CHECK_FALSE(report.all_pass);
    // frozen from the eigensolver oracle: t = 0.01 gives min eigenvalue
    // about -0.28121, t = 0.5 about -0.14939
    bool deep_failure = false;
    for (const auto& e : report.entries)
        if (e.min_eigenvalue < -1e-6) deep_failure = true;
    CHECK(deep_failure);
    CHECK(std::abs(report.entries[0].min_eigenvalue - (-0.2812066345785071)) < 1e-9);
}

TEST_CASE("schoenberg failures are monotone in the radius") {
    auto z = make_lattice_group(1);
    auto k = power_kernel(z, 3.0);
    // principal submatrix interlacing: a failure at radius r persists for r' >= r
    std::vector<double> previous_min;
    for (int radius : {6, 7, 8}) {
        auto report = schoenberg_check(z, k, radius, {0.01, 0.1, 0.5});
        CHECK_FALSE(report.all_pass);
        std::vector<double> mins;
        for (const auto& e : report.entries) mins.push_back(e.min_eigenvalue);
        if (!previous_min.empty())
            for (std::size_t i = 0; i < mins.size(); ++i)
                CHECK(mins[i] <= previous_min[i] + 1e-12);
        previous_min = mins;
    }
}

TEST_CASE("direct cnd on fixtures") {
    auto z = make_lattice_group(1);
    auto r1 = direct_cnd_check(z, power_kernel(z, 1.0), 4);
    CHECK(r1.pass);
    CHECK(std::abs(r1.max_restricted_eigenvalue) <= 1e-9);

    auto z2 = make_lattice_group(2);
    auto r2 = direct_cnd_check(z2, l2sq_kernel(z2), 3);
    CHECK(r2.pass);

    auto r3 = direct_cnd_check(z, power_kernel(z, 3.0), 6);
    CHECK_FALSE(r3.pass);
    CHECK(r3.max_restricted_eigenvalue > 1.0);

    // radius 0: the mean-zero subspace is empty
    auto r0 = direct_cnd_check(z, power_kernel(z, 1.0), 0);
    CHECK(r0.pass);
    CHECK(r0.max_restricted_eigenvalue == 0.0);
}

TEST_CASE("schoenberg consistency with the direct check on the fixture set") {
    struct Fixture {
        GroupPtr model;
        LengthKernel kernel;
        int radius;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({make_lattice_group(1), power_kernel(make_lattice_group(1), 1.0), 5});
    fixtures.push_back({make_lattice_group(1), power_kernel(make_lattice_group(1), 1.5), 5});
    fixtures.push_back({make_lattice_group(1), power_kernel(make_lattice_group(1), 3.0), 6});
    fixtures.push_back({make_lattice_group(2), l2sq_kernel(make_lattice_group(2)), 3});
    fixtures.push_back({make_free_group(2), wordlength_kernel(make_free_group(2)), 3});

    for (auto& [model, kernel, radius] : fixtures) {
        auto direct = direct_cnd_check(model, kernel, radius, 1e-9);
        auto psd = schoenberg_check(model, kernel, radius, default_t_grid(), 1e-8);
        if (direct.max_restricted_eigenvalue <= 1e-10) {
            CHECK(psd.all_pass); // matrix Schoenberg: cnd forces psd at every t
        } else if (!psd.all_pass) {
            CHECK(direct.max_restricted_eigenvalue > -1e-10);
        }
    }
}

TEST_CASE("positive definite check fixtures") {
    auto z = make_lattice_group(1);
    auto k = power_kernel(z, 1.0);

    // resolvent diagonal omega_1(n) = 1/(1 + |n|); frozen oracle min 0.392734
    auto omega = positive_definite_check(
        z, [&k](const GroupElement& g) { return 1.0 / (1.0 + k(g)); }, 4);
    CHECK(omega.all_pass);
    CHECK(std::abs(omega.entries[0].min_eigenvalue - 0.392733989702627) < 1e-9);

    // constant one: rank-one all-ones Gram
    auto ones = positive_definite_check(
        z, [](const GroupElement&) { return 1.0; }, 3);
    CHECK(ones.all_pass);
    CHECK(std::abs(ones.entries[0].min_eigenvalue) <= 1e-12);

    // phi = 1 at e, -1 elsewhere: 5x5 spectrum {-3, 2, 2, 2, 2}
    auto e = z->identity();
    auto sign = positive_definite_check(
        z, [e](const GroupElement& g) { return g == e ? 1.0 : -1.0; }, 2);
    CHECK_FALSE(sign.all_pass);
    CHECK(std::abs(sign.entries[0].min_eigenvalue - (-3.0)) < 1e-10);
}

TEST_CASE("gram matrices are exactly symmetric with unit diagonal") {
    auto f2 = make_free_group(2);
    auto k = wordlength_kernel(f2);
    Ball ball = ball_enumerate(f2, 3);
    k.prepare(6);
    SymMatrix a = assemble_gram(*f2, ball,
                                [&k](const GroupElement& g) { return std::exp(-0.7 * k(g)); });
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.at(i, i) == 1.0);
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a.at(i, j) == a.at(j, i));
    }
    SymMatrix s = assemble_gram_serial(*f2, ball,
                                       [&k](const GroupElement& g) { return std::exp(-0.7 * k(g)); });
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a.at(i, j) == s.at(i, j));
}

TEST_CASE("eigensolver trace sanity on assembled matrices") {
    auto z2 = make_lattice_group(2);
    auto k = l2sq_kernel(z2);
    Ball ball = ball_enumerate(z2, 4);
    SymMatrix a = assemble_gram(*z2, ball,
                                [&k](const GroupElement& g) { return std::exp(-0.3 * k(g)); });
    double trace = a.trace();
    auto ev = jacobi_eigenvalues(std::move(a));
    double sum = 0.0;
    for (double l : ev) sum += l;
    CHECK(std::abs(sum - trace) <= 1e-8 * std::abs(trace));
}

TEST_CASE("kernel grammar round trips") {
    auto z = make_lattice_group(1);
    auto z2 = make_lattice_group(2);
    auto f2 = make_free_group(2);

    CHECK(parse_kernel_spec(z, "wordlength").label() == "wordlength");
    CHECK(parse_kernel_spec(z2, "l2sq").label() == "l2sq");
    CHECK(parse_kernel_spec(z, "power(1.5)").label() == "power(1.5)");
    CHECK(parse_kernel_spec(z2, "l1").label() == "l1");

    auto sum = parse_kernel_spec(z, "sum(power(1), scale(2, power(2)))");
    auto g3 = z->encode_natural({3});
    CHECK(sum(g3) == 3.0 + 2.0 * 9.0);

    auto pull = parse_kernel_spec(z2, "pullback(coord(1), power(1))");
    CHECK(pull(z2->encode_natural({7, -4})) == 4.0);
    CHECK(pull(z2->encode_natural({7, 0})) == 0.0);

    auto bsum = parse_kernel_spec(f2, "pullback(expsum(2), power(1))");
    // a b a b^-1 b^-1 has b-exponent sum -1... build a b a b a^-1: sum = 2
    CHECK(bsum(f2->encode_natural({1, 2, 1, 2, -1})) == 2.0);

    CHECK_THROWS_AS(parse_kernel_spec(z, "l2sq(3)"), spec_parse_error);
    CHECK_THROWS_AS(parse_kernel_spec(f2, "l1"), spec_parse_error);
    CHECK_THROWS_AS(parse_kernel_spec(z, "nope"), spec_parse_error);
    CHECK_THROWS_AS(parse_kernel_spec(z, "power(-1)"), spec_parse_error);
}

TEST_CASE("table kernel") {
    auto z2 = make_lattice_group(2);
    std::string path = "test_table_kernel.csv";
    {
        std::ofstream os(path);
        os << "# |m| on a small window\n";
        for (int n = -6; n <= 6; ++n)
            for (int m = -6; m <= 6; ++m) os << n << " " << m << "," << std::abs(m) << "\n";
    }
    auto k = table_kernel(z2, path);
    CHECK(k(z2->encode_natural({3, -2})) == 2.0);
    CHECK(k(z2->identity()) == 0.0);
    CHECK_THROWS_AS(k(z2->encode_natural({40, 0})), kernel_error);
    std::remove(path.c_str());

    CHECK_THROWS_AS(table_kernel(z2, "missing_file.csv"), kernel_error);
}

TEST_CASE("wordlength kernel on heisenberg needs prepare") {
    auto h = make_heisenberg_group();
    auto k = wordlength_kernel(h);
    k.prepare(3);
    Ball b = ball_enumerate(h, 3);
    std::size_t offset = 0;
    for (std::size_t len = 0; len < b.sphere_sizes.size(); ++len) {
        for (std::size_t i = offset; i < offset + b.sphere_sizes[len]; ++i)
            CHECK(k(b.elements[i]) == static_cast<double>(len));
        offset += b.sphere_sizes[len];
    }
    // central element (0,0,1) = x y x^-1 y^-1 has word length 4
    k.prepare(4);
    CHECK(k(h->encode_natural({0, 0, 1})) == 4.0);
}

TEST_CASE("tail models attached to built-ins") {
    auto f2k = wordlength_kernel(make_free_group(2));
    CHECK(f2k.tail().kind == TailModel::Kind::Geometric);
    CHECK(f2k.tail().ratio == 3.0);
    CHECK(f2k.tail().has_lower);

    auto z2k = wordlength_kernel(make_lattice_group(2));
    CHECK(z2k.tail().kind == TailModel::Kind::Polynomial);

    auto pull = pullback_kernel(make_lattice_group(2), coord_hom(make_lattice_group(2), 1),
                                power_kernel(make_lattice_group(1), 1.0));
    CHECK(pull.tail().kind == TailModel::Kind::None);
}

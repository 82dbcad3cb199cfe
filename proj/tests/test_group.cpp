#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

#include "specgrowth/ball.hpp"
#include "specgrowth/group.hpp"

using namespace specgrowth;

namespace {

// independent oracle: count reduced words of length exactly n over k letter
// pairs by direct recursion (no GroupModel involved)
std::uint64_t free_sphere_oracle(int k, int n) {
    if (n == 0) return 1;
    std::uint64_t count = 2 * static_cast<std::uint64_t>(k);
    for (int i = 1; i < n; ++i) count *= 2 * static_cast<std::uint64_t>(k) - 1;
    return count;
}

// independent oracle: lattice points with |x|_1 <= n, nested loops
std::uint64_t lattice_ball_oracle(int d, int n) {
    std::uint64_t count = 0;
    if (d == 1) {
        for (int x = -n; x <= n; ++x)
            if (std::abs(x) <= n) ++count;
        return count;
    }
    if (d == 2) {
        for (int x = -n; x <= n; ++x)
            for (int y = -n; y <= n; ++y)
                if (std::abs(x) + std::abs(y) <= n) ++count;
        return count;
    }
    for (int x = -n; x <= n; ++x)
        for (int y = -n; y <= n; ++y)
            for (int z = -n; z <= n; ++z)
                if (std::abs(x) + std::abs(y) + std::abs(z) <= n) ++count;
    return count;
}

GroupElement from_word(const GroupModel& m, const std::vector<std::int64_t>& letters) {
    return m.encode_natural(letters);
}

} // namespace

TEST_CASE("zigzag round trip and identity minimality") {
    for (std::int64_t n : {-5, -1, 0, 1, 2, 100, -100})
        CHECK(GroupElement::unzigzag(GroupElement::zigzag(n)) == n);
    CHECK(GroupElement::zigzag(0) == 0); // identity coordinates map to the minimum
}

TEST_CASE("ball on Z radius 3") {
    auto z = make_lattice_group(1);
    Ball b = ball_enumerate(z, 3);
    CHECK(b.size() == 7);
    CHECK(b.sphere_sizes == std::vector<std::size_t>{1, 2, 2, 2});
}

TEST_CASE("ball on F_2 radius 2 and radius 0") {
    auto f2 = make_free_group(2);
    Ball b = ball_enumerate(f2, 2);
    CHECK(b.size() == 17);
    CHECK(b.sphere_sizes == std::vector<std::size_t>{1, 4, 12});
    Ball b0 = ball_enumerate(f2, 0);
    CHECK(b0.size() == 1);
    CHECK(b0.elements[0] == f2->identity());
}

TEST_CASE("free group sphere sizes match the closed-form oracle to n = 10") {
    for (int k : {2, 3}) {
        auto fk = make_free_group(k);
        int n = k == 2 ? 10 : 7;
        Ball b = ball_enumerate(fk, n);
        for (int j = 0; j <= n; ++j)
            CHECK(b.sphere_sizes[static_cast<std::size_t>(j)] == free_sphere_oracle(k, j));
    }
}

TEST_CASE("lattice ball sizes match the brute-force oracle") {
    for (int d : {1, 2, 3}) {
        auto zd = make_lattice_group(d);
        int n = d == 3 ? 8 : 20;
        Ball b = ball_enumerate(zd, n);
        CHECK(b.size() == lattice_ball_oracle(d, n));
    }
}

TEST_CASE("ball ordering is deterministic and grouped by word length") {
    auto f2 = make_free_group(2);
    Ball a = ball_enumerate(f2, 4);
    Ball b = ball_enumerate(f2, 4);
    CHECK(a.elements == b.elements);
    Ball s = ball_enumerate(f2, 4, default_element_cap(), ExecMode::Serial);
    CHECK(a.elements == s.elements);
    // within each sphere the encoding is increasing
    std::size_t offset = 0;
    for (std::size_t len = 0; len < a.sphere_sizes.size(); ++len) {
        for (std::size_t i = offset + 1; i < offset + a.sphere_sizes[len]; ++i)
            CHECK(a.elements[i - 1] < a.elements[i]);
        offset += a.sphere_sizes[len];
    }
}

TEST_CASE("group axioms on random elements") {
    std::mt19937 rng(7);
    for (auto model : {make_free_group(2), make_lattice_group(2), make_heisenberg_group(),
                       make_cyclic_group(6),
                       make_product_group(make_free_group(1), make_cyclic_group(4))}) {
        Ball b = ball_enumerate(model, 3);
        std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const auto& g = b.elements[pick(rng)];
            const auto& h = b.elements[pick(rng)];
            const auto& k = b.elements[pick(rng)];
            CHECK(model->multiply(g, model->invert(g)) == model->identity());
            CHECK(model->multiply(model->multiply(g, h), k) ==
                  model->multiply(g, model->multiply(h, k)));
            CHECK(model->multiply(g, model->identity()) == g);
        }
        // generator list closed under inversion
        for (const auto& s : model->generators()) {
            auto inv = model->invert(s);
            CHECK(std::count(model->generators().begin(), model->generators().end(), inv) >= 1);
        }
    }
}

TEST_CASE("word length examples") {
    auto z = make_lattice_group(1);
    CHECK(word_length(z, z->encode_natural({-5}), 10) == 5);

    auto f2 = make_free_group(2);
    // a b a^-1
    CHECK(word_length(f2, from_word(*f2, {1, 2, -1}), 5) == 3);
    // a^9 beyond horizon 5
    CHECK(!word_length(f2, from_word(*f2, {1, 1, 1, 1, 1, 1, 1, 1, 1}), 5).has_value());
    CHECK(word_length(f2, f2->identity(), 0) == 0);
}

TEST_CASE("word length is symmetric under inversion") {
    for (auto model : {make_free_group(2), make_heisenberg_group(), make_lattice_group(2)}) {
        Ball b = ball_enumerate(model, 4);
        std::size_t offset = 0;
        for (std::size_t len = 0; len < b.sphere_sizes.size(); ++len) {
            for (std::size_t i = offset; i < offset + b.sphere_sizes[len]; ++i) {
                auto wl = word_length(model, model->invert(b.elements[i]), 4);
                REQUIRE(wl.has_value());
                CHECK(*wl == static_cast<std::int64_t>(len));
            }
            offset += b.sphere_sizes[len];
        }
    }
}

TEST_CASE("heisenberg multiplication against the matrix model") {
    auto h = make_heisenberg_group();
    // [[1,a,c],[0,1,b],[0,0,1]] * [[1,a',c'],[0,1,b'],[0,0,1]]
    auto g1 = h->encode_natural({1, 2, 3});
    auto g2 = h->encode_natural({-4, 5, 1});
    auto prod = h->decode_natural(h->multiply(g1, g2));
    CHECK(prod == std::vector<std::int64_t>{-3, 7, 3 + 1 + 1 * 5});
    CHECK(h->multiply(g1, h->invert(g1)) == h->identity());
}

TEST_CASE("finite groups exhaust") {
    auto c5 = make_cyclic_group(5);
    Ball b = ball_enumerate(c5, 10);
    CHECK(b.size() == 5);
    CHECK(b.sphere_sizes[0] == 1);
    CHECK(b.sphere_sizes[1] == 2);
    CHECK(b.sphere_sizes[2] == 2);
    CHECK(b.sphere_sizes[3] == 0);

    auto c1 = make_cyclic_group(1); // trivial group, generator = identity
    CHECK(ball_enumerate(c1, 3).size() == 1);
}

TEST_CASE("product group balls multiply sphere counts via convolution") {
    auto p = make_product_group(make_lattice_group(1), make_lattice_group(1));
    auto z2 = make_lattice_group(2);
    Ball bp = ball_enumerate(p, 6);
    Ball b2 = ball_enumerate(z2, 6);
    CHECK(bp.size() == b2.size());
    CHECK(bp.sphere_sizes == b2.sphere_sizes);
}

TEST_CASE("resource cap fails loudly") {
    auto f2 = make_free_group(2);
    CHECK_THROWS_AS(ball_enumerate(f2, 8, 1000), resource_limit_error);
}

TEST_CASE("group spec grammar") {
    CHECK(parse_group_spec("free(2)")->name() == "free(2)");
    CHECK(parse_group_spec("zd(3)")->name() == "zd(3)");
    CHECK(parse_group_spec("cyclic(12)")->name() == "cyclic(12)");
    CHECK(parse_group_spec("heisenberg")->name() == "heisenberg");
    CHECK(parse_group_spec("product(free(2), zd(1))")->name() == "product(free(2), zd(1))");
    CHECK(parse_group_spec(" product( zd(2) , product(free(1), cyclic(3)) ) ")->name() ==
          "product(zd(2), product(free(1), cyclic(3)))");
    CHECK_THROWS_AS(parse_group_spec("so(3)"), spec_parse_error);
    CHECK_THROWS_AS(parse_group_spec("free(0)"), spec_parse_error);
    CHECK_THROWS_AS(parse_group_spec("free(2"), spec_parse_error);
}

TEST_CASE("element text round trip") {
    auto models = {make_free_group(2), make_lattice_group(2), make_heisenberg_group(),
                   make_product_group(make_free_group(2), make_lattice_group(2))};
    for (auto model : models) {
        Ball b = ball_enumerate(model, 3);
        for (const auto& g : b.elements)
            CHECK(parse_element(*model, element_text(*model, g)) == g);
    }
    // left-nested product
    auto nested = make_product_group(
        make_product_group(make_lattice_group(1), make_free_group(1)), make_cyclic_group(3));
    Ball b = ball_enumerate(nested, 2);
    for (const auto& g : b.elements)
        CHECK(parse_element(*nested, element_text(*nested, g)) == g);
}

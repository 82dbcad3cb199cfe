#include "specgrowth/ball.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "specgrowth/common.hpp"

namespace specgrowth {

std::size_t default_element_cap() {
    if (const char* env = std::getenv("SPECTRAL_GROWTH_MAX_ELEMENTS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 5'000'000;
}

std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
    if (a > UINT64_MAX - b) throw std::overflow_error("count overflow");
    return a + b;
}

int Ball::length_of_index(std::size_t i) const {
    std::size_t seen = 0;
    for (std::size_t j = 0; j < sphere_sizes.size(); ++j) {
        seen += sphere_sizes[j];
        if (i < seen) return static_cast<int>(j);
    }
    return -1;
}

BallEnumerator::BallEnumerator(GroupPtr model, std::size_t cap, ExecMode mode)
    : model_(std::move(model)), cap_(cap), mode_(mode) {
    if (model_->generators().empty()) throw spec_parse_error("generator list is empty");
    const GroupElement& e = model_->identity();
    elements_.push_back(e);
    sphere_sizes_.push_back(1);
    frontier_.push_back(e);
    visited_.emplace(e, 0);
    if (elements_.size() > cap_) throw resource_limit_error(elements_.size(), cap_);
}

void BallEnumerator::extend_to(int radius) {
    while (radius_ < radius) {
        expand_once();
        ++radius_;
    }
}

void BallEnumerator::expand_once() {
    const auto& gens = model_->generators();
    std::vector<GroupElement> candidates;

    if (exhausted_ || frontier_.empty()) {
        exhausted_ = true;
        sphere_sizes_.push_back(0);
        frontier_.clear();
        return;
    }

    candidates.resize(frontier_.size() * gens.size());
    if (mode_ == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(frontier_.size()); ++i)
            for (std::size_t j = 0; j < gens.size(); ++j)
                candidates[static_cast<std::size_t>(i) * gens.size() + j] =
                    model_->multiply(frontier_[static_cast<std::size_t>(i)], gens[j]);
    } else {
        for (std::size_t i = 0; i < frontier_.size(); ++i)
            for (std::size_t j = 0; j < gens.size(); ++j)
                candidates[i * gens.size() + j] = model_->multiply(frontier_[i], gens[j]);
    }

    // dedupe deterministically: sort, unique, drop already-visited
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<GroupElement> sphere;
    sphere.reserve(candidates.size());
    for (auto& g : candidates)
        if (visited_.find(g) == visited_.end()) sphere.push_back(std::move(g));

    if (elements_.size() + sphere.size() > cap_)
        throw resource_limit_error(elements_.size() + sphere.size(), cap_);

    int level = radius_ + 1;
    for (const auto& g : sphere) visited_.emplace(g, level);
    sphere_sizes_.push_back(sphere.size());
    elements_.insert(elements_.end(), sphere.begin(), sphere.end());
    frontier_ = std::move(sphere);
    if (frontier_.empty()) exhausted_ = true;
}

Ball BallEnumerator::ball_at(int radius) const {
    if (radius > radius_) throw std::logic_error("ball_at beyond explored radius");
    Ball b;
    b.radius = radius;
    std::size_t count = 0;
    for (int j = 0; j <= radius && j < static_cast<int>(sphere_sizes_.size()); ++j) {
        b.sphere_sizes.push_back(sphere_sizes_[j]);
        count += sphere_sizes_[j];
    }
    while (b.sphere_sizes.size() < static_cast<std::size_t>(radius) + 1)
        b.sphere_sizes.push_back(0);
    b.elements.assign(elements_.begin(), elements_.begin() + count);
    return b;
}

Ball BallEnumerator::take_ball() && {
    Ball b;
    b.radius = radius_;
    b.sphere_sizes = std::move(sphere_sizes_);
    b.elements = std::move(elements_);
    return b;
}

std::optional<int> BallEnumerator::length_of(const GroupElement& g) const {
    auto it = visited_.find(g);
    if (it == visited_.end()) return std::nullopt;
    return it->second;
}

Ball ball_enumerate(const GroupPtr& model, int n, std::size_t cap, ExecMode mode) {
    if (n < 0) throw std::invalid_argument("ball radius must be nonnegative");
    BallEnumerator be(model, cap, mode);
    be.extend_to(n);
    return std::move(be).take_ball();
}

std::optional<std::int64_t> word_length(const GroupPtr& model, const GroupElement& g, int horizon,
                                        std::size_t cap) {
    if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
    if (auto exact = model->exact_word_length(g))
        return *exact <= horizon ? std::optional<std::int64_t>(*exact) : std::nullopt;
    BallEnumerator be(model, cap);
    for (int r = 0; r <= horizon; ++r) {
        be.extend_to(r);
        if (auto l = be.length_of(g)) return static_cast<std::int64_t>(*l);
        if (be.exhausted()) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace specgrowth

#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "specgrowth/common.hpp"
#include "specgrowth/group.hpp"

namespace specgrowth {

// Cayley ball of a given radius. Elements are grouped by word length and each
// sphere is sorted by encoding, so the ordering is deterministic.
struct Ball {
    int radius = 0;
    std::vector<GroupElement> elements;
    std::vector<std::size_t> sphere_sizes; // index = word length, length radius+1

    std::size_t size() const noexcept { return elements.size(); }

    // word length of elements[i] (spheres are contiguous)
    int length_of_index(std::size_t i) const;
};

// Stateful breadth-first enumerator over the Cayley graph. extend_to() grows
// the explored radius; the frontier expansion runs in parallel but the final
// ordering is independent of thread count.
class BallEnumerator {
public:
    explicit BallEnumerator(GroupPtr model, std::size_t cap = default_element_cap(),
                            ExecMode mode = ExecMode::Parallel);

    void extend_to(int radius);
    int radius() const noexcept { return radius_; }

    const std::vector<GroupElement>& elements() const noexcept { return elements_; }
    const std::vector<std::size_t>& sphere_sizes() const noexcept { return sphere_sizes_; }

    Ball ball_at(int radius) const; // prefix of the explored ball
    Ball take_ball() &&;            // move out the full explored ball

    bool contains(const GroupElement& g) const { return visited_.count(g) != 0; }
    std::optional<int> length_of(const GroupElement& g) const;

    // true once a sphere came back empty (the group is exhausted)
    bool exhausted() const noexcept { return exhausted_; }

    const GroupModel& model() const noexcept { return *model_; }

private:
    void expand_once();

    GroupPtr model_;
    std::size_t cap_;
    ExecMode mode_;
    int radius_ = 0;
    bool exhausted_ = false;
    std::vector<GroupElement> elements_;
    std::vector<std::size_t> sphere_sizes_;
    std::vector<GroupElement> frontier_;
    std::unordered_map<GroupElement, int, GroupElementHash> visited_;
};

// Every element of word length <= n, exactly once.
Ball ball_enumerate(const GroupPtr& model, int n, std::size_t cap = default_element_cap(),
                    ExecMode mode = ExecMode::Parallel);

// Minimal word length of g if <= horizon, nullopt otherwise.
std::optional<std::int64_t> word_length(const GroupPtr& model, const GroupElement& g, int horizon,
                                        std::size_t cap = default_element_cap());

} // namespace specgrowth

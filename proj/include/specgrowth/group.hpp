#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specgrowth/common.hpp"

namespace specgrowth {

// Canonical element encoding: a sequence of unsigned code words compared in
// shortlex order. Signed coordinates enter through the zigzag map
// (0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...) so the identity encoding is the
// minimum of the order. Two elements of the same group are equal iff their
// encodings are equal.
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<std::uint32_t> code) : code_(std::move(code)) {}

    static std::uint32_t zigzag(std::int64_t n);
    static std::int64_t unzigzag(std::uint32_t z);

    const std::vector<std::uint32_t>& code() const noexcept { return code_; }

    bool operator==(const GroupElement& o) const noexcept { return code_ == o.code_; }

    // shortlex: length first, then lexicographic on code words
    std::strong_ordering operator<=>(const GroupElement& o) const noexcept {
        if (auto c = code_.size() <=> o.code_.size(); c != nullptr) return c;
        for (std::size_t i = 0; i < code_.size(); ++i)
            if (auto c = code_[i] <=> o.code_[i]; c != nullptr) return c;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const noexcept;

private:
    std::vector<std::uint32_t> code_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const noexcept { return g.hash(); }
};

// A finitely generated countable group given by identity, multiplication,
// inversion and a symmetric ordered generating set. Models are immutable and
// safe to share across threads.
class GroupModel {
public:
    virtual ~GroupModel() = default;

    const GroupElement& identity() const noexcept { return identity_; }
    virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
    virtual GroupElement invert(const GroupElement& a) const = 0;
    const std::vector<GroupElement>& generators() const noexcept { return generators_; }
    virtual std::string name() const = 0;

    // Closed-form word length where the model admits one (free, abelian and
    // products thereof). Heisenberg falls back to BFS.
    virtual std::optional<std::int64_t> exact_word_length(const GroupElement&) const {
        return std::nullopt;
    }

    // Natural signed-coordinate view of an element, used by the element text
    // form and the table kernel. Inverse of encode_natural.
    virtual std::vector<std::int64_t> decode_natural(const GroupElement& g) const = 0;
    virtual GroupElement encode_natural(const std::vector<std::int64_t>& coords) const = 0;

protected:
    GroupElement identity_;
    std::vector<GroupElement> generators_;
};

using GroupPtr = std::shared_ptr<const GroupModel>;

GroupPtr make_free_group(int rank);
GroupPtr make_lattice_group(int dim);            // Z^d with standard generators
GroupPtr make_cyclic_group(std::int64_t modulus); // Z/m
GroupPtr make_heisenberg_group();                 // integer upper-triangular 3x3
GroupPtr make_product_group(GroupPtr a, GroupPtr b);

// Mini-grammar: free(k) | zd(d) | cyclic(m) | heisenberg | product(spec, spec)
GroupPtr parse_group_spec(const std::string& spec);

// Text form of an element (space-separated natural coordinates, product parts
// separated by '|'). parse_element is its inverse.
std::string element_text(const GroupModel& model, const GroupElement& g);
GroupElement parse_element(const GroupModel& model, const std::string& text);

} // namespace specgrowth

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "specgrowth/common.hpp"
#include "specgrowth/group.hpp"

namespace specgrowth {

// Certified bound on the spectral counting increments gamma_n (counts of
// kernel values in (n-1, n]). Geometric: gamma_n <= c * ratio^n; Polynomial:
// gamma_n <= c * n^degree for n >= 1. A lower bound gamma_n >= lower_c *
// ratio^n, when present, certifies divergence claims.
struct TailModel {
    enum class Kind { None, Geometric, Polynomial };
    Kind kind = Kind::None;
    double c = 0.0;
    double ratio = 0.0;  // geometric
    double degree = 0.0; // polynomial
    bool has_lower = false;
    double lower_c = 0.0;

    static TailModel none() { return {}; }
    static TailModel geometric(double c, double ratio, std::optional<double> lower = std::nullopt);
    static TailModel polynomial(double c, double degree);
};

// A symmetric nonnegative function on the group with l(e) = 0 and a monotone
// coercivity bound l(g) >= coercivity(|g|_S), identically 0 when unknown.
// Kernels are immutable after construction; prepare() makes evaluations up to
// the given word-length horizon safe for concurrent reads.
class LengthKernel {
public:
    using EvalFn = std::function<double(const GroupElement&)>;
    using CoercivityFn = std::function<double(std::int64_t)>;
    using PrepareFn = std::function<void(int)>;

    LengthKernel() = default;
    LengthKernel(std::string label, EvalFn eval, CoercivityFn coercivity = {},
                 TailModel tail = TailModel::none(), bool integer_valued = false,
                 PrepareFn prepare = {});

    double operator()(const GroupElement& g) const { return eval_(g); }
    double coercivity(std::int64_t word_len) const;
    const std::string& label() const noexcept { return label_; }
    const TailModel& tail() const noexcept { return tail_; }
    bool integer_valued() const noexcept { return integer_valued_; }
    bool has_coercivity() const noexcept { return static_cast<bool>(coercivity_); }

    // Ensure evaluations of all elements of word length <= horizon (and their
    // pairwise quotients, horizon doubled by callers that need it) are pure
    // lookups afterwards. No-op for closed-form kernels.
    void prepare(int horizon) const;

private:
    std::string label_;
    EvalFn eval_;
    CoercivityFn coercivity_;
    TailModel tail_;
    bool integer_valued_ = false;
    PrepareFn prepare_;
};

// Built-in kernels. Tail models are attached where a certified bound is
// known: exact geometric for free word length, polynomial for abelian and
// Heisenberg word length; derived kernels (pullback, sum, scale, table)
// carry none.
LengthKernel wordlength_kernel(GroupPtr model);
LengthKernel l1_kernel(GroupPtr model);
LengthKernel l2sq_kernel(GroupPtr model);                 // sum of squared coordinates
LengthKernel power_kernel(GroupPtr model, double alpha);  // |n|^alpha on Z or Z/m
LengthKernel sum_kernel(LengthKernel a, LengthKernel b);
LengthKernel scale_kernel(double c, LengthKernel k);
LengthKernel table_kernel(GroupPtr model, const std::string& csv_path);

// Group homomorphism into Z for pullback kernels.
struct Homomorphism {
    std::string label;
    std::function<std::int64_t(const GroupElement&)> map;
};
Homomorphism expsum_hom(GroupPtr model, int generator_index); // free(k) -> Z exponent sum
Homomorphism coord_hom(GroupPtr model, int coordinate);       // zd(d) -> Z projection
LengthKernel pullback_kernel(GroupPtr model, Homomorphism hom, LengthKernel target);

// Mini-grammar: wordlength | l1 | l2sq | power(alpha) | pullback(hom, kernel)
// | sum(k1,k2) | scale(c,k) | table(file); hom: expsum(i) | coord(i).
LengthKernel parse_kernel_spec(GroupPtr model, const std::string& spec);

} // namespace specgrowth

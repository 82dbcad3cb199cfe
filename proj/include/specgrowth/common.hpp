#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace specgrowth {

// Enumeration and matrix kernels come in two flavours: the OpenMP path used by
// default and a serial reference kept for testing and benchmarking.
enum class ExecMode { Serial, Parallel };

// Thrown when an enumeration would exceed the configured element cap.
class resource_limit_error : public std::runtime_error {
public:
    resource_limit_error(std::size_t requested, std::size_t cap)
        : std::runtime_error("enumeration exceeds element cap (" + std::to_string(requested) +
                             " > " + std::to_string(cap) + ")"),
          requested_(requested), cap_(cap) {}
    std::size_t requested() const noexcept { return requested_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t requested_;
    std::size_t cap_;
};

// Thrown when the eigensolver exhausts its sweep budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a kernel is evaluated outside its domain (e.g. a table kernel
// missing an entry) or constructed from an invalid specification.
class kernel_error : public std::runtime_error {
public:
    explicit kernel_error(const std::string& what) : std::runtime_error(what) {}
};

class spec_parse_error : public std::runtime_error {
public:
    explicit spec_parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Default enumeration cap; SPECTRAL_GROWTH_MAX_ELEMENTS overrides it.
std::size_t default_element_cap();

// Checked unsigned addition for exact counts.
std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b);

} // namespace specgrowth

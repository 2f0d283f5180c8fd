#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rca {

// Resource budgets for table construction and brute-force enumeration.
struct Limits {
    std::uint64_t max_table = std::uint64_t{1} << 24;  // entries in any built rule table
    std::uint64_t max_evals = std::uint64_t{1} << 28;  // assignments enumerated by a single check
    int max_radius = 8;                                // inverse synthesis search radius
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad files, inconsistent parameters, unknown names.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class AlphabetMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class NotReversible : public Error {
public:
    using Error::Error;
};

class RadiusCapExceeded : public Error {
public:
    explicit RadiusCapExceeded(int cap)
        : Error("no inverse rule found within radius " + std::to_string(cap) +
                " (raise --max-radius)"),
          cap_(cap) {}
    int cap() const noexcept { return cap_; }

private:
    int cap_;
};

// A computation would exceed one of the configured Limits.
class TooLarge : public Error {
public:
    TooLarge(const std::string& what, std::uint64_t required, std::uint64_t cap)
        : Error(what + ": requires " + (required == UINT64_MAX ? std::string(">2^64") : std::to_string(required)) +
                ", cap is " + std::to_string(cap)),
          required_(required), cap_(cap) {}
    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t required_;
    std::uint64_t cap_;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

// A proven containment or identity did not hold. Signals a bug.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

// q^k, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t q, std::size_t k) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (q != 0 && r > UINT64_MAX / q) return UINT64_MAX;
        r *= q;
    }
    return r;
}

// q^k, throwing TooLarge when it exceeds cap.
inline std::uint64_t checked_pow(std::uint64_t q, std::size_t k, std::uint64_t cap, const char* what) {
    const std::uint64_t r = saturating_pow(q, k);
    if (r > cap) throw TooLarge(what, r, cap);
    return r;
}

}  // namespace rca

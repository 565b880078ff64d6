#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasespace {

using Complex = std::complex<double>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation
/// (a ≤ 0 in a Gaussian integral, gain below unity, malformed grid, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A polynomial order or truncation exceeds a supported guard.
class RangeError : public Error {
public:
    using Error::Error;
};

/// The cat-state normalizer 1 + |ζ|² + 2 Re(ζ⟨α₁|α₂⟩) is not positive.
class DegenerateStateError : public Error {
public:
    using Error::Error;
};

/// Evaluation would overflow, or its cancellation factor is beyond the
/// configured limit. Carries the smallest width that would be accepted.
class RegularizationError : public Error {
public:
    RegularizationError(const std::string& what, double min_safe_sigma, double cancellation_factor)
        : Error(what), min_safe_sigma_(min_safe_sigma), cancellation_factor_(cancellation_factor) {}

    double min_safe_sigma() const noexcept { return min_safe_sigma_; }
    double cancellation_factor() const noexcept { return cancellation_factor_; }

private:
    double min_safe_sigma_;
    double cancellation_factor_;
};

/// The requested quantity only exists as a distribution (g = 1 amplifier P).
class SingularLimitError : public Error {
public:
    using Error::Error;
};

/// A quadrature integrand produced a non-finite sample.
class NumericError : public Error {
public:
    NumericError(const std::string& what, std::size_t node_index)
        : Error(what), node_index_(node_index) {}

    std::size_t node_index() const noexcept { return node_index_; }

private:
    std::size_t node_index_;
};

/// Internal consistency check failed; signals a bug rather than bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Non-fatal diagnostics (truncation, cancellation, aliasing). Operations
/// that can degrade silently accept an optional pointer to one of these.
class Warnings {
public:
    void add(std::string message) { messages_.push_back(std::move(message)); }
    bool empty() const noexcept { return messages_.empty(); }
    std::size_t size() const noexcept { return messages_.size(); }
    const std::vector<std::string>& messages() const noexcept { return messages_; }
    bool contains(const std::string& fragment) const {
        for (const auto& m : messages_) {
            if (m.find(fragment) != std::string::npos) return true;
        }
        return false;
    }

private:
    std::vector<std::string> messages_;
};

inline void warn(Warnings* sink, std::string message) {
    if (sink != nullptr) sink->add(std::move(message));
}

} // namespace phasespace

#pragma once

#include <stdexcept>
#include <string>

namespace knotspec {

/// Base of all toolkit errors. `code()` is the machine-readable identifier
/// used in the CLI error envelope.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

/// Malformed or out-of-contract input (bad file, degenerate curve, bad index).
class InputError : public Error {
  public:
    explicit InputError(const std::string& what, std::string code = "input_error") : Error(std::move(code), what) {}
};

/// The projection direction hits the measure-zero degenerate set; resample.
class DegenerateProjection : public Error {
  public:
    explicit DegenerateProjection(const std::string& what) : Error("degenerate_projection", what) {}
};

/// A computation was refused because a cap or budget would be exceeded.
class ComputationRefused : public Error {
  public:
    explicit ComputationRefused(const std::string& what, std::string code = "refused") : Error(std::move(code), what) {}
};

/// Rejection sampling gave up.
class SamplingError : public Error {
  public:
    explicit SamplingError(const std::string& what) : Error("sampling_error", what) {}
};

/// A diagram code that does not describe a planar diagram.
class StructuralError : public Error {
  public:
    explicit StructuralError(const std::string& what) : Error("structural_error", what) {}
};

/// A mathematical invariant that must hold was violated.
class AssertionFailure : public Error {
  public:
    explicit AssertionFailure(const std::string& what) : Error("assertion_failure", what) {}
};

} // namespace knotspec

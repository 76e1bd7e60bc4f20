#pragma once

#include <functional>
#include <utility>

#include "fermat/types.hpp"

namespace fermat {

struct MeroValue {
  Complex value;
  bool at_pole = false;
};

/// A meromorphic function evaluated pointwise. at_pole marks samples that lie
/// on, or too close to, a singularity for the value to be trusted.
class MeroFn {
 public:
  using Fn = std::function<MeroValue(Complex)>;

  MeroFn() = default;
  explicit MeroFn(Fn fn) : fn_(std::move(fn)) {}

  /// Wraps a pole-free function.
  static MeroFn analytic(std::function<Complex(Complex)> f) {
    return MeroFn([f = std::move(f)](Complex z) { return MeroValue{f(z), false}; });
  }

  MeroValue operator()(Complex z) const { return fn_(z); }

  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  Fn fn_;
};

}  // namespace fermat

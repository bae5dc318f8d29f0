#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "twintree/errors.hpp"

namespace twintree {

// Edge multiplicity of a scheme: a positive natural or omega (countably many).
// Omega compares greater than every natural; addition saturates (w + k = w)
// and decrementing omega yields omega again.
class Multiplicity {
 public:
  constexpr Multiplicity() : v_(1) {}

  static constexpr Multiplicity finite(std::uint64_t k) {
    if (k == 0 || k >= kOmega) throw BadParams("finite multiplicity must be >= 1");
    Multiplicity m;
    m.v_ = k;
    return m;
  }

  static constexpr Multiplicity omega() {
    Multiplicity m;
    m.v_ = kOmega;
    return m;
  }

  constexpr bool is_omega() const { return v_ == kOmega; }

  constexpr std::uint64_t count() const {
    if (is_omega()) throw Error("count() on omega multiplicity");
    return v_;
  }

  // min(value, cap) with omega mapped to cap; used to turn matching problems
  // with omega capacities into finite ones
  constexpr std::uint64_t clamp(std::uint64_t cap) const {
    return is_omega() ? cap : (v_ < cap ? v_ : cap);
  }

  friend constexpr bool operator==(Multiplicity a, Multiplicity b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Multiplicity a, Multiplicity b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(Multiplicity a, Multiplicity b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(Multiplicity a, Multiplicity b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(Multiplicity a, Multiplicity b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(Multiplicity a, Multiplicity b) { return a.v_ >= b.v_; }

  friend constexpr Multiplicity operator+(Multiplicity a, Multiplicity b) {
    if (a.is_omega() || b.is_omega()) return omega();
    std::uint64_t s = a.v_ + b.v_;
    if (s < a.v_ || s >= kOmega) s = kOmega - 1;  // saturate short of omega
    Multiplicity m;
    m.v_ = s;
    return m;
  }

  friend constexpr Multiplicity operator*(Multiplicity a, Multiplicity b) {
    if (a.is_omega() || b.is_omega()) return omega();
    Multiplicity m;
    if (a.v_ > (kOmega - 1) / b.v_) {
      m.v_ = kOmega - 1;  // saturate short of omega
    } else {
      m.v_ = a.v_ * b.v_;
    }
    return m;
  }

  // Multiplicity left after using one copy: omega stays omega, finite k
  // drops to k-1 (0 means the entry disappears).
  constexpr std::uint64_t decremented_count_or_omega(bool* still_omega) const {
    if (is_omega()) {
      *still_omega = true;
      return 0;
    }
    *still_omega = false;
    return v_ - 1;
  }

  std::string str() const { return is_omega() ? "w" : std::to_string(v_); }

 private:
  static constexpr std::uint64_t kOmega = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v_;
};

}  // namespace twintree

#pragma once

#include <array>
#include <cmath>

namespace qbound {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm_sq(const Vec3& a) noexcept { return dot(a, a); }
inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

inline Vec3 scaled(const Vec3& a, double s) noexcept { return {a[0] * s, a[1] * s, a[2] * s}; }

/// Qubit state ρ = ½(I + c·σ). Construction rejects |c| > 1 + 1e-12.
class BlochState {
 public:
  BlochState() = default;
  explicit BlochState(const Vec3& c);

  const Vec3& c() const noexcept { return c_; }

 private:
  Vec3 c_{0.0, 0.0, 0.0};
};

/// Qubit observable A = a0·I + a·σ.
struct BlochObservable {
  double a0 = 0.0;
  Vec3 a{0.0, 0.0, 0.0};
};

}  // namespace qbound

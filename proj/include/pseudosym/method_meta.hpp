#pragma once

#include <limits>
#include <string>

namespace pseudosym {

/// Stand-in for an infinite pseudo-symmetry / pseudo-symplecticity order.
inline constexpr int kUnbounded = std::numeric_limits<int>::max();

/// Declared orders of a method. Declarative only; the diagnostics module
/// measures them.
struct MethodMeta {
  int order = 1;
  int pseudo_symmetry_order = kUnbounded;
  int pseudo_symplecticity_order = kUnbounded;
  // Set when a construction would have raised the order further but the
  // base's pseudo-symmetry order caps it.
  bool order_capped = false;

  static MethodMeta symmetric(int order) { return {order, kUnbounded, kUnbounded, false}; }

  bool is_symmetric() const { return pseudo_symmetry_order == kUnbounded; }

  bool consistent() const {
    return order >= 1 && pseudo_symmetry_order >= order && pseudo_symplecticity_order >= order;
  }

  friend bool operator==(const MethodMeta&, const MethodMeta&) = default;
};

inline std::string order_to_string(int order) {
  return order == kUnbounded ? std::string("inf") : std::to_string(order);
}

}  // namespace pseudosym

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plsurj/linalg.hpp"
#include "plsurj/point.hpp"

namespace plsurj {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Exact two-phase simplex with Bland's rule:
/// maximize c.x subject to A x = b, x >= 0.
LpResult lp_maximize(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

/// Whether relint(conv(q)) meets conv(m), decided by an exact LP.
bool relint_hull_meets_hull(std::span<const Point> q, std::span<const Point> m);

/// Whether conv(q) meets conv(m).
bool hulls_meet(std::span<const Point> q, std::span<const Point> m);

/// Largest weight of q[index] over convex combinations of q lying in
/// conv(m); nullopt when the hulls are disjoint.
std::optional<Rational> max_weight_meeting(std::span<const Point> q, std::size_t index, std::span<const Point> m);

}  // namespace plsurj

#pragma once

// Degree-2 invariant from a Gauss code by counting the crossed-arrow
// subdiagram: pairs of crossings A, B visited as O_A ... U_B ... U_A ... O_B
// from the basepoint, each contributing sign(A) * sign(B).

#include <map>
#include <vector>

#include "confint/gauss_code.hpp"

namespace confint {

inline long pv_v2_at_basepoint(const GaussCode& g) {
  std::map<int, int> over_pos, under_pos, sign;
  for (int i = 0; i < static_cast<int>(g.visits.size()); ++i) {
    const auto& v = g.visits[i];
    (v.over ? over_pos : under_pos)[v.label] = i;
    sign[v.label] = v.sign;
  }
  long total = 0;
  for (const auto& [a, oa] : over_pos) {
    const int ua = under_pos.at(a);
    if (oa > ua) continue;
    for (const auto& [b, ob] : over_pos) {
      if (b == a) continue;
      const int ub = under_pos.at(b);
      if (oa < ub && ub < ua && ua < ob) total += sign.at(a) * sign.at(b);
    }
  }
  return total;
}

/// Evaluates the count at every basepoint and throws if they disagree.
inline long pv_v2(const GaussCode& g) {
  g.validate();
  const long v = pv_v2_at_basepoint(g);
  for (int s = 1; s < static_cast<int>(g.visits.size()); ++s)
    if (pv_v2_at_basepoint(g.rotated(s)) != v) throw PreconditionError("Gauss code count depends on the basepoint");
  return v;
}

inline long pv_v2(const KnotCurve& k, const Vec3& direction = default_projection()) {
  return pv_v2(gauss_code(k, direction));
}

}  // namespace confint

#pragma once

#include <string>
#include <vector>

#include "semiarc/point_set.hpp"

namespace semiarc {

struct IdentityCheck {
  std::string name;
  bool holds = true;
  std::size_t instances = 0;  // how many line pairs / lines / witnesses were tested
  std::string detail;         // first violation
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_hold() const;
  const IdentityCheck* find(std::string_view name) const;
};

/**
 * Counting identities and bounds that every point set (or every t-semiarc)
 * must satisfy:
 *   double-count   sum |l∩S| = |S|(q+1), sum |l∩S|(|l∩S|-1) = |S|(|S|-1)
 *   hosszu         q-t <= |S \ l| <= q for each (q+1-t)-secant l
 *   i0             t = 1 and q <= 3, or t^2 >= q-1, when a long secant exists
 *   j1             t(q-1-t) <= nm for line pairs meeting in S; equality
 *                  forces |S \ (l1 ∪ l2)| = q-1-t
 *   le2            V° type: |S| != 2q-2t+1, and |S| <= 2q-t when t > 1
 *   dovv           two (q-t)-secants and q > 2t+3 give a V° witness;
 *                  two (q-t+1)-secants give a V• witness
 *   t1             both threshold statements, in integer form
 *   le             off-line points of a V_t witness are perspectivity centres
 *                  (generated planes only)
 * Semiarc-specific checks are skipped (instances = 0) when S is not a
 * t-semiarc with t <= q-2.
 */
IdentityReport check_counting_identities(const PointSet& s);

}  // namespace semiarc

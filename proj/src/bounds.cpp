#include "semiarc/bounds.hpp"

#include <algorithm>

#include "semiarc/perspective.hpp"

namespace semiarc {

bool IdentityReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

const IdentityCheck* IdentityReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

void fail(IdentityCheck& c, const std::string& what) {
  if (c.holds) c.detail = what;
  c.holds = false;
}

std::string pair_str(LineId a, LineId b) { return "lines " + std::to_string(a) + "," + std::to_string(b); }

}  // namespace

IdentityReport check_counting_identities(const PointSet& s) {
  const Plane& plane = s.plane();
  const std::int64_t q = plane.order();
  const auto size = static_cast<std::int64_t>(s.size());
  IdentityReport rep;

  IdentityCheck dc{"double-count"};
  std::int64_t sum1 = 0, sum2 = 0;
  for (unsigned k : s.line_counts()) {
    sum1 += k;
    sum2 += std::int64_t{k} * (k - 1);
  }
  dc.instances = 2;
  if (sum1 != size * (q + 1)) fail(dc, "sum |l∩S| = " + std::to_string(sum1));
  if (sum2 != size * (size - 1)) fail(dc, "sum |l∩S|(|l∩S|-1) = " + std::to_string(sum2));
  rep.checks.push_back(dc);

  IdentityCheck hosszu{"hosszu"}, i0{"i0"}, j1{"j1"}, le2{"le2"}, dovv{"dovv"}, t1{"t1"}, le{"le"};
  const auto report = classify_semiarc(s);
  // t in {q-1, q, q+1} are the trivial cases
  if (!report.t || *report.t + 2 > q) {
    for (auto* c : {&hosszu, &i0, &j1, &le2, &dovv, &t1, &le}) rep.checks.push_back(*c);
    return rep;
  }
  const std::int64_t t = *report.t;
  const auto counts = s.line_counts();
  const auto nlines = static_cast<LineId>(plane.size());

  std::size_t long_secants = 0, short_a = 0, short_b = 0;
  for (LineId l = 0; l < nlines; ++l) {
    const std::int64_t k = counts[l];
    if (k == q + 1 - t) {
      ++long_secants;
      ++hosszu.instances;
      const std::int64_t off = size - k;
      if (off < q - t || off > q) fail(hosszu, "line " + std::to_string(l) + ": |S\\l| = " + std::to_string(off));
    }
    if (k == q - t) ++short_a;
    if (k == q - t + 1) ++short_b;
  }
  if (long_secants > 0) {
    ++i0.instances;
    if (!((t == 1 && q <= 3) || t * t >= q - 1)) fail(i0, "t = " + std::to_string(t));
  }

  const auto witnesses = detect_vt(s, static_cast<unsigned>(t));
  const bool has_open = std::any_of(witnesses.begin(), witnesses.end(), [](const VtWitness& w) { return w.is_open(); });
  const bool has_closed = std::any_of(witnesses.begin(), witnesses.end(), [](const VtWitness& w) { return !w.is_open(); });

  if (has_open) {
    ++le2.instances;
    if (size == 2 * q - 2 * t + 1) fail(le2, "|S| = 2q-2t+1");
    if (t > 1 && size > 2 * q - t) fail(le2, "|S| = " + std::to_string(size) + " > 2q-t");
  }
  if (short_a >= 2 && q > 2 * t + 3) {
    ++dovv.instances;
    if (!has_open) fail(dovv, "two (q-t)-secants but no V° witness");
  }
  if (short_b >= 2) {
    ++dovv.instances;
    if (!has_closed) fail(dovv, "two (q-t+1)-secants but no V• witness");
  }

  for (LineId a = 0; a < nlines; ++a) {
    for (LineId b = a + 1; b < nlines; ++b) {
      const PointId vp = plane.meet(a, b);
      const bool vin = s.contains(vp);
      const std::int64_t ka = counts[a] - (vin ? 1 : 0), kb = counts[b] - (vin ? 1 : 0);
      const std::int64_t n = q - ka, m = q - kb;
      const std::int64_t mn = std::min(n, m);
      if (vin) {
        ++j1.instances;
        const std::int64_t lhs = t * (q - 1 - t);
        if (lhs > n * m) {
          fail(j1, pair_str(a, b) + ": q > t+1+nm/t");
        } else if (lhs == n * m) {
          const std::int64_t rest = size - counts[a] - counts[b] + 1;
          if (rest != q - 1 - t) fail(j1, pair_str(a, b) + ": equality but |S\\(l1∪l2)| != q-1-t");
        }
        // part 2: q > min + nm/t
        if ((q - mn) * t > n * m) {
          ++t1.instances;
          if (!(n == t && m == t && 2 * t == q - 1 && 2 * size == 3 * (q + 1))) {
            fail(t1, pair_str(a, b) + ": part 2 threshold met without the projective-triangle shape");
          }
        }
      } else if (t > 1 && (q - mn) * (t - 1) > 2 * n * m) {
        ++t1.instances;
        if (!(n == t && m == t)) fail(t1, pair_str(a, b) + ": part 1 threshold met but n,m != t");
      }
    }
  }

  if (plane.has_coordinates()) {
    PlanePtr ptr = s.plane_ptr();
    for (const auto& w : witnesses) {
      std::vector<PointId> x1, x2, x;
      for (PointId p : s.points()) {
        const bool on1 = plane.incident(p, w.l1), on2 = plane.incident(p, w.l2);
        if (on1 && !on2) x1.push_back(p);
        if (on2 && !on1) x2.push_back(p);
        if (!on1 && !on2) x.push_back(p);
      }
      if (x.empty() || x1.empty() || x2.empty()) continue;
      ++le.instances;
      const auto cs = centres(PerspectiveFrame::from_lines(ptr, w.l1, w.l2), x1, x2);
      for (PointId p : x) {
        if (!std::binary_search(cs.u.begin(), cs.u.end(), p)) {
          fail(le, pair_str(w.l1, w.l2) + ": point " + std::to_string(p) + " is not a centre");
        }
      }
    }
  }
  for (auto* c : {&hosszu, &i0, &j1, &le2, &dovv, &t1, &le}) rep.checks.push_back(*c);
  return rep;
}

}  // namespace semiarc

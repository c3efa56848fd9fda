#include "semiarc/point_set.hpp"

#include <algorithm>

#include "semiarc/errors.hpp"

namespace semiarc {

PointSet::PointSet(PlanePtr plane, std::vector<PointId> points)
    : plane_(std::move(plane)), points_(std::move(points)) {
  if (!plane_) throw Error(ErrorKind::InvalidPoint, "point set needs a plane");
  if (points_.empty()) throw Error(ErrorKind::EmptyPointSet, "point set is empty");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  mask_ = PointMask(plane_->size());
  for (PointId p : points_) {
    if (p >= plane_->size()) throw Error(ErrorKind::InvalidPoint, "point index " + std::to_string(p) + " out of range");
    mask_.set(p);
  }
  line_counts_.resize(plane_->size());
  for (LineId l = 0; l < plane_->size(); ++l) {
    line_counts_[l] = static_cast<unsigned>(plane_->line_mask(l).intersect_count(mask_));
  }
}

std::vector<unsigned> tangent_counts(const PointSet& s) {
  std::vector<unsigned> out;
  out.reserve(s.size());
  for (PointId p : s.points()) {
    unsigned c = 0;
    for (LineId l : s.plane().lines_through(p)) c += s.on_line(l) == 1;
    out.push_back(c);
  }
  return out;
}

SemiarcReport classify_semiarc(const PointSet& s) {
  SemiarcReport report;
  report.tangent_counts = tangent_counts(s);
  std::map<unsigned, unsigned> freq;
  for (unsigned c : report.tangent_counts) ++freq[c];
  if (freq.size() == 1) {
    report.t = freq.begin()->first;
    return report;
  }
  unsigned mode = freq.begin()->first;
  for (auto [c, n] : freq) {
    if (n > freq[mode]) mode = c;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (report.tangent_counts[i] != mode) report.offending.push_back(s.points()[i]);
  }
  return report;
}

std::map<unsigned, unsigned> secant_spectrum(const PointSet& s) {
  std::map<unsigned, unsigned> out;
  for (unsigned k : s.line_counts()) {
    if (k >= 1) ++out[k];
  }
  return out;
}

namespace {

void require_semiarc(const PointSet& s, unsigned t) {
  const auto report = classify_semiarc(s);
  if (!report.t || *report.t != t) {
    throw Error(ErrorKind::NotASemiarc, "set is not a " + std::to_string(t) + "-semiarc");
  }
}

}  // namespace

std::vector<LineId> long_secants(const PointSet& s, unsigned t) {
  require_semiarc(s, t);
  const unsigned q = s.plane().order();
  std::vector<LineId> out;
  if (t + 1 >= q + 1) return out;  // q+1-t < 2: no secants of that length
  for (LineId l = 0; l < s.plane().size(); ++l) {
    if (s.on_line(l) == q + 1 - t) {
      if (s.size() - s.on_line(l) > q) {
        throw Error(ErrorKind::InconsistentInput, "long secant leaves more than q points off it");
      }
      out.push_back(l);
    }
  }
  return out;
}

std::vector<VtWitness> detect_vt(const PointSet& s, unsigned t) {
  require_semiarc(s, t);
  const Plane& plane = s.plane();
  const unsigned q = plane.order();
  std::vector<VtWitness> out;
  if (t >= q) return out;
  // Each leg l_i \ P carries q-t points of S, so |l_i ∩ S| is q-t or q-t+1.
  std::vector<LineId> cands;
  for (LineId l = 0; l < plane.size(); ++l) {
    if (s.on_line(l) == q - t || s.on_line(l) == q - t + 1) cands.push_back(l);
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      const LineId a = cands[i], b = cands[j];
      const PointId vertex = plane.meet(a, b);
      const unsigned in_vertex = s.contains(vertex) ? 1 : 0;
      if (s.on_line(a) - in_vertex != q - t || s.on_line(b) - in_vertex != q - t) continue;
      VtWitness w;
      w.l1 = a;
      w.l2 = b;
      w.vertex = vertex;
      w.vertex_in_set = in_vertex;
      for (PointId p : plane.points_on(a)) {
        if (p != vertex && !s.contains(p)) w.removed1.push_back(p);
      }
      for (PointId p : plane.points_on(b)) {
        if (p != vertex && !s.contains(p)) w.removed2.push_back(p);
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

RedeiReport redei_analysis(const PointSet& s) {
  const Plane& plane = s.plane();
  const unsigned q = plane.order();
  RedeiReport r;
  r.is_blocking = std::all_of(s.line_counts().begin(), s.line_counts().end(), [](unsigned k) { return k > 0; });
  r.is_nontrivial = std::none_of(s.line_counts().begin(), s.line_counts().end(), [&](unsigned k) { return k == q + 1; });
  if (r.is_blocking) {
    // Minimal iff every point lies on a tangent line.
    r.is_minimal = true;
    for (PointId p : s.points()) {
      const auto ls = plane.lines_through(p);
      if (std::none_of(ls.begin(), ls.end(), [&](LineId l) { return s.on_line(l) == 1; })) {
        r.is_minimal = false;
        break;
      }
    }
  }
  if (r.is_blocking && r.is_nontrivial && s.size() > q) {
    for (LineId l = 0; l < plane.size(); ++l) {
      if (s.on_line(l) == s.size() - q) r.redei_lines.push_back(l);
    }
  }
  return r;
}

LineMeetingBound line_meeting_bound(const PointSet& u, PointId p) {
  if (u.contains(p)) throw Error(ErrorKind::PointInsideSet, "point " + std::to_string(p) + " lies in U");
  const Plane& plane = u.plane();
  const auto q = static_cast<std::int64_t>(plane.order());
  LineMeetingBound out;
  for (unsigned k : u.line_counts()) out.lines_meeting += k > 0;
  for (LineId l : plane.lines_through(p)) out.r += u.on_line(l) > 0;
  const auto r = static_cast<std::int64_t>(out.r);
  const auto n = static_cast<std::int64_t>(u.size());
  out.bound = 1 + r * q + (n - r) * (q + 1 - r);
  out.holds = static_cast<std::int64_t>(out.lines_meeting) <= out.bound;
  return out;
}

bool is_bare_vt_configuration(const PointSet& s, unsigned t) {
  const unsigned q = s.plane().order();
  if (t >= q || s.size() != 2 * (q - t)) return false;
  const auto report = classify_semiarc(s);
  if (!report.t || *report.t != t) return false;
  for (const auto& w : detect_vt(s, t)) {
    if (!w.vertex_in_set && s.on_line(w.l1) + s.on_line(w.l2) == s.size()) return true;
  }
  return false;
}

}  // namespace semiarc

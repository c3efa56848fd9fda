#include "semiarc/collineation.hpp"

#include <algorithm>
#include <map>

#include "semiarc/errors.hpp"

namespace semiarc {

Mat3 identity_matrix() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 mat_mul(const FiniteField& f, const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Elem s = 0;
      for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a[i * 3 + k], b[k * 3 + j]));
      out[i * 3 + j] = s;
    }
  }
  return out;
}

Triple mat_apply(const FiniteField& f, const Mat3& m, const Triple& x) {
  Triple out{};
  for (int i = 0; i < 3; ++i) {
    Elem s = 0;
    for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(m[i * 3 + k], x[k]));
    out[i] = s;
  }
  return out;
}

Elem determinant(const FiniteField& f, const Mat3& m) {
  auto minor = [&](int a, int b, int c, int d) { return f.sub(f.mul(m[a], m[d]), f.mul(m[b], m[c])); };
  Elem d = f.mul(m[0], minor(4, 5, 7, 8));
  d = f.sub(d, f.mul(m[1], minor(3, 5, 6, 8)));
  d = f.add(d, f.mul(m[2], minor(3, 4, 6, 7)));
  return d;
}

std::optional<Mat3> mat_inverse(const FiniteField& f, const Mat3& m) {
  const Elem det = determinant(f, m);
  if (det == 0) return std::nullopt;
  const Elem s = f.inv(det);
  auto cof = [&](int r0, int r1, int c0, int c1) {
    return f.sub(f.mul(m[r0 * 3 + c0], m[r1 * 3 + c1]), f.mul(m[r0 * 3 + c1], m[r1 * 3 + c0]));
  };
  // Adjugate, transposed in place.
  Mat3 adj{cof(1, 2, 1, 2), f.neg(cof(0, 2, 1, 2)), cof(0, 1, 1, 2),
           f.neg(cof(1, 2, 0, 2)), cof(0, 2, 0, 2), f.neg(cof(0, 1, 0, 2)),
           cof(1, 2, 0, 1), f.neg(cof(0, 2, 0, 1)), cof(0, 1, 0, 1)};
  for (auto& x : adj) x = f.mul(x, s);
  return adj;
}

Mat3 mat_frobenius(const FiniteField& f, const Mat3& m, unsigned e) {
  Mat3 out = m;
  for (auto& x : out) x = f.frobenius(x, e);
  return out;
}

Triple apply(const FiniteField& f, const Collineation& c, const Triple& x) {
  Triple y = x;
  for (auto& v : y) v = f.frobenius(v, c.frobenius_exp);
  return mat_apply(f, c.matrix, y);
}

PointId apply(const Plane& plane, const Collineation& c, PointId p) {
  return plane.point_index(apply(plane.field(), c, plane.point_coords(p)));
}

LineId apply_to_line(const Plane& plane, const Collineation& c, LineId l) {
  const auto pts = plane.points_on(l);
  return plane.join(apply(plane, c, pts[0]), apply(plane, c, pts[1]));
}

std::vector<PointId> apply(const Plane& plane, const Collineation& c, std::span<const PointId> points) {
  std::vector<PointId> out;
  out.reserve(points.size());
  for (PointId p : points) out.push_back(apply(plane, c, p));
  std::sort(out.begin(), out.end());
  return out;
}

Collineation compose(const FiniteField& f, const Collineation& a, const Collineation& b) {
  Collineation out;
  out.matrix = mat_mul(f, a.matrix, mat_frobenius(f, b.matrix, a.frobenius_exp));
  out.frobenius_exp = (a.frobenius_exp + b.frobenius_exp) % f.degree();
  return out;
}

Collineation inverse(const FiniteField& f, const Collineation& c) {
  const auto inv = mat_inverse(f, c.matrix);
  if (!inv) throw Error(ErrorKind::InconsistentInput, "singular collineation matrix");
  const unsigned back = (f.degree() - c.frobenius_exp % f.degree()) % f.degree();
  return Collineation{mat_frobenius(f, *inv, back), back};
}

Collineation random_collineation(const FiniteField& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> coord(0, f.order() - 1);
  std::uniform_int_distribution<unsigned> exp(0, f.degree() - 1);
  Collineation c;
  do {
    for (auto& x : c.matrix) x = coord(rng);
  } while (determinant(f, c.matrix) == 0);
  c.frobenius_exp = exp(rng);
  return c;
}

namespace {

// Matrix T with T e_i ~ pts[i] (i < 3) and T (1,1,1) ~ pts[3].
std::optional<Mat3> standard_frame(const FiniteField& f, std::span<const Triple, 4> pts) {
  Mat3 cols{};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) cols[k * 3 + i] = pts[i][k];
  }
  const auto inv = mat_inverse(f, cols);
  if (!inv) return std::nullopt;
  const Triple lambda = mat_apply(f, *inv, pts[3]);
  for (Elem l : lambda) {
    if (l == 0) return std::nullopt;
  }
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) cols[k * 3 + i] = f.mul(cols[k * 3 + i], lambda[i]);
  }
  return cols;
}

}  // namespace

std::optional<Collineation> frame_map(const FiniteField& f, std::span<const Triple, 4> from,
                                      std::span<const Triple, 4> to, unsigned e) {
  const auto t1 = standard_frame(f, from);
  const auto t2 = standard_frame(f, to);
  if (!t1 || !t2) return std::nullopt;
  const auto t1_inv = mat_inverse(f, *t1);
  Collineation c;
  c.matrix = mat_mul(f, *t2, mat_frobenius(f, *t1_inv, e));
  c.frobenius_exp = e % f.degree();
  return c;
}

bool in_general_position(const Plane& plane, std::span<const PointId> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) return false;
      const LineId l = plane.join(points[i], points[j]);
      for (std::size_t k = j + 1; k < points.size(); ++k) {
        if (plane.incident(points[k], l)) return false;
      }
    }
  }
  return true;
}

std::vector<unsigned> point_signature(const Plane& plane, const PointMask& set, PointId p) {
  std::vector<unsigned> sig;
  sig.reserve(plane.order() + 2);
  for (LineId l : plane.lines_through(p)) sig.push_back(static_cast<unsigned>(plane.line_mask(l).intersect_count(set)));
  std::sort(sig.begin(), sig.end());
  sig.insert(sig.begin(), set.test(p) ? 1u : 0u);
  return sig;
}

namespace {

// Extends `frame` to four points in general position using at most
// `from_set` points of the set first; candidates are scanned in index order.
bool choose_frame(const Plane& plane, const std::vector<PointId>& set_points, const std::vector<PointId>& others,
                  std::size_t want_from_set, std::vector<PointId>& frame) {
  if (frame.size() == 4) return true;
  const bool use_set = frame.size() < want_from_set;
  const auto& pool = use_set ? set_points : others;
  for (PointId p : pool) {
    frame.push_back(p);
    if (in_general_position(plane, frame) && choose_frame(plane, set_points, others, want_from_set, frame)) return true;
    frame.pop_back();
  }
  return false;
}

std::map<unsigned, unsigned> line_spectrum(const Plane& plane, const PointMask& set) {
  std::map<unsigned, unsigned> out;
  for (LineId l = 0; l < plane.size(); ++l) ++out[static_cast<unsigned>(plane.line_mask(l).intersect_count(set))];
  return out;
}

}  // namespace

std::optional<Collineation> are_equivalent(const Plane& plane, std::span<const PointId> s1,
                                           std::span<const PointId> s2) {
  if (plane.kind() != PlaneKind::GeneratedDesarguesian) {
    throw Error(ErrorKind::UnsupportedPlaneKind, "equivalence search needs coordinates; compare invariants instead");
  }
  const FiniteField& f = plane.field();
  PointMask m1(plane.size()), m2(plane.size());
  for (PointId p : s1) m1.set(p);
  for (PointId p : s2) m2.set(p);
  if (m1.count() != m2.count()) return std::nullopt;
  if (line_spectrum(plane, m1) != line_spectrum(plane, m2)) return std::nullopt;

  std::vector<std::vector<unsigned>> sig1(plane.size()), sig2(plane.size());
  for (PointId p = 0; p < plane.size(); ++p) {
    sig1[p] = point_signature(plane, m1, p);
    sig2[p] = point_signature(plane, m2, p);
  }
  {
    auto a = sig1, b = sig2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<PointId> in1, out1;
  for (PointId p = 0; p < plane.size(); ++p) (m1.test(p) ? in1 : out1).push_back(p);
  std::vector<PointId> frame;
  for (std::size_t want = 4;; --want) {
    frame.clear();
    if (choose_frame(plane, in1, out1, want, frame)) break;
    if (want == 0) return std::nullopt;  // unreachable: the plane has a frame
  }
  std::array<Triple, 4> from{};
  for (int i = 0; i < 4; ++i) from[i] = plane.point_coords(frame[i]);

  std::array<std::vector<PointId>, 4> candidates;
  for (int i = 0; i < 4; ++i) {
    for (PointId p = 0; p < plane.size(); ++p) {
      if (sig2[p] == sig1[frame[i]]) candidates[i].push_back(p);
    }
  }

  std::vector<PointId> image;
  std::optional<Collineation> found;
  auto check = [&]() {
    std::array<Triple, 4> to{};
    for (int i = 0; i < 4; ++i) to[i] = plane.point_coords(image[i]);
    for (unsigned e = 0; e < f.degree(); ++e) {
      auto c = frame_map(f, from, to, e);
      if (!c) continue;
      bool ok = true;
      for (PointId p : s1) {
        if (!m2.test(apply(plane, *c, p))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = c;
        return true;
      }
    }
    return false;
  };
  auto recurse = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == 4) return check();
    for (PointId p : candidates[depth]) {
      image.push_back(p);
      if (in_general_position(plane, image) && self(self, depth + 1)) return true;
      image.pop_back();
    }
    return false;
  };
  recurse(recurse, 0);
  return found;
}

}  // namespace semiarc

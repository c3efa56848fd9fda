#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "semiarc/plane.hpp"

namespace semiarc {

/// Row-major 3x3 matrix over a FiniteField.
using Mat3 = std::array<Elem, 9>;

Mat3 identity_matrix();
Mat3 mat_mul(const FiniteField& f, const Mat3& a, const Mat3& b);
Triple mat_apply(const FiniteField& f, const Mat3& m, const Triple& x);
Elem determinant(const FiniteField& f, const Mat3& m);
std::optional<Mat3> mat_inverse(const FiniteField& f, const Mat3& m);
/// Applies x -> x^{p^e} entrywise.
Mat3 mat_frobenius(const FiniteField& f, const Mat3& m, unsigned e);

/// Collineation x -> M * x^{sigma}, sigma = (x -> x^{p^e}) applied coordinatewise.
struct Collineation {
  Mat3 matrix = identity_matrix();
  unsigned frobenius_exp = 0;

  friend bool operator==(const Collineation&, const Collineation&) = default;
};

Triple apply(const FiniteField& f, const Collineation& c, const Triple& x);
PointId apply(const Plane& plane, const Collineation& c, PointId p);
LineId apply_to_line(const Plane& plane, const Collineation& c, LineId l);
std::vector<PointId> apply(const Plane& plane, const Collineation& c, std::span<const PointId> points);

/// a after b.
Collineation compose(const FiniteField& f, const Collineation& a, const Collineation& b);
Collineation inverse(const FiniteField& f, const Collineation& c);

/// Uniformly random element of PGammaL(3,q).
Collineation random_collineation(const FiniteField& f, std::mt19937_64& rng);

/// Collineation sending four points in general position (given as triples)
/// to four others, with the given automorphism exponent.
std::optional<Collineation> frame_map(const FiniteField& f, std::span<const Triple, 4> from,
                                      std::span<const Triple, 4> to, unsigned e);

/// No three of the points collinear.
bool in_general_position(const Plane& plane, std::span<const PointId> points);

/**
 * Searches PGammaL(3,q) for a collineation mapping s1 onto s2.
 *
 * An ordered frame of four points in general position is fixed, taken from
 * s1 as far as possible, and its images are enumerated among points with
 * matching secant invariants. Returns nullopt only after exhausting every
 * frame image and automorphism exponent. Needs a generated plane.
 */
std::optional<Collineation> are_equivalent(const Plane& plane, std::span<const PointId> s1,
                                           std::span<const PointId> s2);

/// Per-point invariant of a point relative to a set: membership followed by
/// the sorted multiset of |l ∩ S| over the lines l through the point.
std::vector<unsigned> point_signature(const Plane& plane, const PointMask& set, PointId p);

}  // namespace semiarc

#include <algorithm>
#include <set>

#include "doctest.h"
#include "semiarc/collineation.hpp"
#include "semiarc/constructions.hpp"
#include "semiarc/errors.hpp"

using namespace semiarc;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidPoint;
}

// Tangent count of every point, by walking all lines.
std::optional<unsigned> oracle_t(const Plane& plane, std::span<const PointId> s) {
  std::set<unsigned> counts;
  for (PointId p : s) {
    unsigned tangents = 0;
    for (LineId l = 0; l < plane.size(); ++l) {
      if (!plane.incident(p, l)) continue;
      unsigned hits = 0;
      for (PointId x : s) hits += plane.incident(x, l);
      tangents += hits == 1;
    }
    counts.insert(tangents);
  }
  if (counts.size() != 1) return std::nullopt;
  return *counts.begin();
}

unsigned max_secant(const Plane& plane, std::span<const PointId> s) {
  unsigned best = 0;
  for (LineId l = 0; l < plane.size(); ++l) {
    unsigned hits = 0;
    for (PointId x : s) hits += plane.incident(x, l);
    best = std::max(best, hits);
  }
  return best;
}

void expect_ok(const Construction& c) {
  const auto chk = check_construction(c);
  CHECK_MESSAGE(chk.t_matches, c.family);
  CHECK_MESSAGE(chk.type_matches, c.family);
  CHECK(oracle_t(c.set.plane(), c.set.points()) == c.claimed_t);
}

}  // namespace

TEST_CASE("projective triangle") {
  for (unsigned q : {5u, 7u, 9u}) {
    const auto c = projective_triangle(build_pg2(q));
    CHECK(c.set.size() == 3 * (q + 1) / 2);
    CHECK(c.claimed_t == (q - 1) / 2);
    expect_ok(c);
  }
  CHECK(kind_of([] { projective_triangle(build_pg2(4)); }) == ErrorKind::EvenOrder);
}

TEST_CASE("vt configurations") {
  for (unsigned q : {4u, 7u}) {
    const auto plane = build_pg2(q);
    const auto c = vt_configuration(plane, 3, 11, 2);
    CHECK(c.set.size() == 2 * (q - 2));
    expect_ok(c);
    CHECK(kind_of([&] { vt_configuration(plane, 3, 11, q - 1); }) == ErrorKind::BadRemovalCount);
    CHECK(kind_of([&] { vt_configuration(plane, 3, 11, 0); }) == ErrorKind::BadRemovalCount);
  }
  const auto plane = build_pg2(5);
  CHECK(kind_of([&] { vt_configuration(plane, 0, 1, 1, {plane->meet(0, 1)}, {}); }) == ErrorKind::BadRemovalCount);
}

TEST_CASE("II-iii families") {
  const auto p7 = build_pg2(7);
  ThmParams tp;
  tp.n = 3;
  const auto c = build_thm_case(p7, ThmCase::II_iii, tp);
  CHECK(c.set.size() == 12);
  CHECK(c.claimed_t == 3);
  expect_ok(c);
  // n = (q-1)/2 is the projective triangle
  for (unsigned q : {5u, 7u}) {
    const auto plane = build_pg2(q);
    ThmParams half;
    half.n = (q - 1) / 2;
    const auto a = build_thm_case(plane, ThmCase::II_iii, half);
    const auto b = projective_triangle(plane);
    CHECK(std::ranges::equal(a.set.points(), b.set.points()));
  }
  tp.n = 6;
  CHECK(kind_of([&] { build_thm_case(p7, ThmCase::II_iii, tp); }) == ErrorKind::CaseConstraintViolated);
  tp.n = 4;
  CHECK(kind_of([&] { build_thm_case(p7, ThmCase::II_iii, tp); }) == ErrorKind::CaseConstraintViolated);
}

TEST_CASE("II-ii subplane family") {
  for (unsigned q : {4u, 9u, 16u}) {
    const auto plane = build_pg2(q);
    ThmParams tp;
    tp.d = 1;
    const auto c = build_thm_case(plane, ThmCase::II_ii, tp);
    const unsigned p = plane->field().characteristic();
    CHECK(c.claimed_t == q - p);
    expect_ok(c);
  }
}

TEST_CASE("type I families") {
  const auto p9 = build_pg2(9);
  ThmParams tp;
  tp.n = 2;
  tp.d = 1;
  tp.h1 = 1;
  tp.orbits = {1};
  const auto c = build_thm_case(p9, ThmCase::I_ii, tp);
  CHECK(c.claimed_t == 3);
  expect_ok(c);

  const auto ci = build_thm_case(p9, ThmCase::I_i, tp);
  expect_ok(ci);

  ThmParams t3 = tp;
  t3.n = 1;
  t3.orbits = {1};
  const auto p27 = build_pg2(27);
  const auto ciii = build_thm_case(p27, ThmCase::I_iii, t3);
  CHECK(ciii.claimed_t == 27 - 6);
  expect_ok(ciii);

  ThmParams empty = tp;
  empty.orbits.clear();
  CHECK(kind_of([&] { build_thm_case(p9, ThmCase::I_ii, empty); }) == ErrorKind::CaseConstraintViolated);
  ThmParams h0 = tp;
  h0.h1 = 0;
  CHECK(kind_of([&] { build_thm_case(p9, ThmCase::I_i, h0); }) == ErrorKind::CaseConstraintViolated);
}

TEST_CASE("Suetake family") {
  const auto p5 = build_pg2(5);
  const auto c = suetake(p5, {1, 4});
  CHECK(c.set.size() == 11);
  expect_ok(c);
  CHECK(max_secant(*p5, c.set.points()) == 4);
  const auto spectrum = secant_spectrum(c.set);
  CHECK(spectrum.count(4));
  CHECK(spectrum.count(3));

  const auto p7 = build_pg2(7);
  const auto c7 = suetake(p7, {1, 6});
  CHECK(c7.set.size() == 17);
  expect_ok(c7);

  CHECK(kind_of([&] { suetake(p5, {1, 2}); }) == ErrorKind::BadASet);
  CHECK(kind_of([&] { suetake(p5, {1, 2, 3, 4}); }) == ErrorKind::BadASet);
  CHECK(kind_of([&] { suetake(p5, {0, 1, 4}); }) == ErrorKind::BadASet);
  CHECK(kind_of([&] { suetake(build_pg2(4), {2, 3}); }) == ErrorKind::BadASet);
  CHECK(kind_of([&] { suetake(build_pg2(8), {1, 2, 3, 4, 5, 6}); }) == ErrorKind::BadASet);
}

TEST_CASE("subplane chain families") {
  const auto p4 = build_pg2(4);
  KmParams k4;
  k4.chain = {1, 2};
  const auto c4 = km_example(p4, 4, k4);
  CHECK(c4.claimed_t == 2);
  expect_ok(c4);

  KmParams k1;
  k1.chain = {1, 2};
  k1.subset = {1};
  const auto c1 = km_example(p4, 1, k1);
  expect_ok(c1);

  const auto p16 = build_pg2(16);
  KmParams k3;
  k3.chain = {1, 2, 4};
  k3.subset = {2};
  expect_ok(km_example(p16, 3, k3));
  k3.subset = {1};
  expect_ok(km_example(p16, 1, k3));
  // a Fano base has no room for Z off the legs on a line missing P
  CHECK(kind_of([&] { km_example(p16, 2, k3); }) == ErrorKind::CaseConstraintViolated);
  KmParams k2;
  k2.chain = {2, 4};
  k2.subset = {1};
  expect_ok(km_example(p16, 2, k2));

  CHECK(kind_of([&] { km_example(p4, 2, k1); }) == ErrorKind::CaseConstraintViolated);

  KmParams bad;
  bad.chain = {2, 4};
  const auto sub = subplane_of_degree(*p16, 2);
  // over PG(2,4) a single Z point cannot meet all three other lines through P
  for (PointId p : sub.points) {
    if (p != 0 && !p16->incident(p, 256) && !p16->incident(p, 272)) {
      bad.z = std::vector<PointId>{p};
      break;
    }
  }
  CHECK(kind_of([&] { km_example(p16, 4, bad); }) == ErrorKind::CaseConstraintViolated);
  bad.z.reset();
  expect_ok(km_example(p16, 4, bad));

  KmParams nn;
  nn.chain = {2, 3};
  CHECK(kind_of([&] { km_example(build_pg2(8), 4, nn); }) == ErrorKind::ChainNotNested);
  nn.chain = {2};
  CHECK(kind_of([&] { km_example(p4, 4, nn); }) == ErrorKind::ChainNotNested);
}

TEST_CASE("conic families") {
  const auto p16 = build_pg2(16);
  // even s: the tangents all pass through the nucleus
  CHECK(kind_of([&] { conic_example(p16, 1, 2); }) == ErrorKind::CaseConstraintViolated);
  CHECK(kind_of([&] { conic_example(p16, 2, 2); }) == ErrorKind::CaseConstraintViolated);

  const auto p25 = build_pg2(25);
  const auto c1 = conic_example(p25, 1, 1);
  CHECK(c1.claimed_t == 20);
  expect_ok(c1);
  expect_ok(conic_example(p25, 2, 1));

  CHECK(kind_of([] { conic_example(build_pg2(9), 1, 1); }) == ErrorKind::SubfieldTooSmall);
  CHECK(kind_of([] { conic_example(build_pg2(64), 1, 4); }) == ErrorKind::NotASubfield);
  CHECK(kind_of([&] { conic_example(p16, 1, 4); }) == ErrorKind::NotASubfield);
}

TEST_CASE("q-2 families") {
  const auto p4 = build_pg2(4);
  for (auto kind : {QMinus2Kind::Quadrangle, QMinus2Kind::Quadrilateral, QMinus2Kind::Fano}) {
    const auto c = q_minus_2_family(p4, kind);
    CHECK(c.claimed_t == 2);
    expect_ok(c);
  }
  const auto fano = q_minus_2_family(p4, QMinus2Kind::Fano);
  CHECK(fano.set.size() == 7);
  CHECK(is_subplane(*p4, fano.set.points(), 2));
  const auto quad = q_minus_2_family(build_pg2(7), QMinus2Kind::Quadrangle);
  CHECK(in_general_position(quad.set.plane(), quad.set.points()));
  expect_ok(quad);
  expect_ok(q_minus_2_family(build_pg2(7), QMinus2Kind::Quadrilateral));
  CHECK(kind_of([] { q_minus_2_family(build_pg2(5), QMinus2Kind::Fano); }) == ErrorKind::NoFanoSubplane);
}

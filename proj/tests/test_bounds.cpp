#include <random>

#include "doctest.h"
#include "semiarc/bounds.hpp"
#include "semiarc/constructions.hpp"

using namespace semiarc;

namespace {

void all_hold(const PointSet& s, const std::string& label) {
  const auto rep = check_counting_identities(s);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.holds, label << " " << c.name << ": " << c.detail);
}

}  // namespace

TEST_CASE("identities on the projective triangle") {
  for (unsigned q : {5u, 7u, 9u, 11u, 13u}) {
    const auto c = projective_triangle(build_pg2(q));
    const auto rep = check_counting_identities(c.set);
    CHECK(rep.all_hold());
    CHECK(rep.find("hosszu")->instances == 3);
    CHECK(rep.find("t1")->instances > 0);  // part 2 fires at the vertices
    CHECK(rep.find("j1")->instances > 0);
  }
}

TEST_CASE("identities on constructions") {
  const auto p7 = build_pg2(7);
  all_hold(vt_configuration(p7, 3, 11, 2).set, "vt");
  all_hold(suetake(p7, {1, 6}).set, "suetake");
  ThmParams tp;
  tp.n = 3;
  const auto c = build_thm_case(p7, ThmCase::II_iii, tp);
  all_hold(c.set, "II-iii");
  const auto rep = check_counting_identities(c.set);
  CHECK(rep.find("le")->instances > 0);

  const auto p9 = build_pg2(9);
  ThmParams t9;
  t9.n = 2;
  t9.h1 = 1;
  t9.orbits = {1};
  for (auto which : {ThmCase::I_i, ThmCase::I_ii}) all_hold(build_thm_case(p9, which, t9).set, "type I");
  for (auto kind : {QMinus2Kind::Quadrangle, QMinus2Kind::Quadrilateral, QMinus2Kind::Fano}) {
    all_hold(q_minus_2_family(build_pg2(4), kind).set, "q-2");
  }
  const auto p25 = build_pg2(25);
  all_hold(conic_example(p25, 1, 1).set, "conic 1");
  all_hold(conic_example(p25, 2, 1).set, "conic 2");
}

TEST_CASE("double counting on random sets") {
  std::mt19937_64 rng(3);
  for (unsigned q : {4u, 5u, 7u}) {
    const auto plane = build_pg2(q);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<PointId> pts;
      const std::size_t k = 1 + rng() % (2 * q);
      for (std::size_t i = 0; i < k; ++i) pts.push_back(rng() % plane->size());
      const PointSet s(plane, pts);
      const auto rep = check_counting_identities(s);
      CHECK(rep.find("double-count")->holds);
      for (const auto& c : rep.checks) CHECK_MESSAGE(c.holds, c.name << ": " << c.detail << " size " << s.size());
    }
  }
}

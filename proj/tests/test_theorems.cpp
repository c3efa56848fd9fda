#include <algorithm>

#include "doctest.h"
#include "semiarc/errors.hpp"
#include "semiarc/theorems.hpp"

using namespace semiarc;

namespace {

TheoremReport run(const std::string& id, std::vector<unsigned> qs = {}) {
  TheoremOptions o;
  o.qs = std::move(qs);
  o.samples = 2000;
  const auto r = verify_theorem(id, o);
  INFO(id << " " << r.to_json().dump());
  CHECK(r.passed);
  CHECK_FALSE(r.counterexample);
  return r;
}

}  // namespace

TEST_CASE("(q-2)-semiarcs of small planes") {
  const std::vector<std::array<std::uint64_t, 4>> golden{
      {3, 234, 234, 0}, {4, 2520, 2520, 360}, {5, 15500, 15500, 0}};
  for (const auto& [q, quadrangles, quadrilaterals, fano] : golden) {
    const auto nc = notes_census(build_pg2(static_cast<unsigned>(q)));
    CHECK(nc.quadrangles == quadrangles);
    CHECK(nc.quadrilaterals == quadrilaterals);
    CHECK(nc.fano == fano);
    CHECK(nc.other == 0);
  }
}

TEST_CASE("census-backed statements") {
  for (const char* id : {"hosszu", "ii1", "j1", "dovv", "le2", "t1", "gcd"}) run(id, {3, 4, 5, 7});
  const auto r = run("i0", {2, 3, 4, 5});
  CHECK(r.details["searches"].size() == 7);
  run("corollary-triangle", {5, 7});
}

TEST_CASE("constructions, blocking sets, perspectivities") {
  const auto t = run("thm", {3, 4, 5, 7, 8, 9});
  for (const char* fam : {"projective-triangle", "thm-I-i", "thm-II-iii", "suetake", "km-4", "qm2-fano"}) {
    CHECK(t.details[fam]["built"].get<int>() > 0);
  }
  const auto b = run("blok", {5});
  CHECK(b.details["5"]["at_bound"].get<int>() > 0);
  const auto p = run("persp", {4, 5, 7, 8, 9, 16});
  CHECK(p.details["case_labels"].size() >= 3);
  CHECK(run("persp").details["case_labels"].size() == 5);
  run("lemma0", {4, 5});
}

TEST_CASE("ids and errors") {
  CHECK(theorem_ids().size() == 14);
  for (const auto& id : theorem_ids()) CHECK_FALSE(default_range(id).empty());
  try {
    verify_theorem("nope");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownTheorem);
  }
  TheoremOptions o;
  o.qs = {6};
  CHECK_THROWS_AS(verify_theorem("hosszu", o), Error);
}

TEST_CASE("incomplete census is reported") {
  TheoremOptions o;
  o.qs = {11};
  o.search.max_units = 1;
  o.search.symmetry = false;
  try {
    verify_theorem("ii1", o);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CensusIncomplete);
  }
}

TEST_CASE("gcd shape predicates") {
  const auto plane = build_pg2(7);
  const auto tri = projective_triangle(plane).set;
  CHECK_FALSE(in_vertexless_triangle(tri));  // vertices belong to the triangle
  const auto vt = vt_configuration(plane, 0, 1, 2).set;
  CHECK(in_vertexless_triangle(vt));
  CHECK(in_punctured_pencil(vt));
}

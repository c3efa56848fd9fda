#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "semiarc/collineation.hpp"
#include "semiarc/errors.hpp"

using namespace semiarc;

TEST_CASE("matrix inverse") {
  const auto f = make_field_of_order(9);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto c = random_collineation(f, rng);
    const auto inv = mat_inverse(f, c.matrix);
    REQUIRE(inv);
    CHECK(mat_mul(f, c.matrix, *inv) == identity_matrix());
  }
}

TEST_CASE("collineations preserve incidence; composition and inverse") {
  for (unsigned q : {4u, 8u, 9u}) {
    const auto plane = build_pg2(q);
    const auto& f = plane->field();
    std::mt19937_64 rng(q);
    for (int i = 0; i < 10; ++i) {
      const auto a = random_collineation(f, rng);
      const auto b = random_collineation(f, rng);
      for (LineId l = 0; l < plane->size(); l += 3) {
        const LineId img = apply_to_line(*plane, a, l);
        for (PointId p : plane->points_on(l)) CHECK(plane->incident(apply(*plane, a, p), img));
      }
      const auto ab = compose(f, a, b);
      const auto ai = inverse(f, a);
      for (PointId p = 0; p < plane->size(); ++p) {
        CHECK(apply(*plane, ab, p) == apply(*plane, a, apply(*plane, b, p)));
        CHECK(apply(*plane, ai, apply(*plane, a, p)) == p);
      }
    }
  }
}

TEST_CASE("are_equivalent") {
  const auto plane = build_pg2(5);
  const auto& f = plane->field();
  std::mt19937_64 rng(11);
  // projective triangle by hand
  std::vector<PointId> tri;
  for (Elem c : f.nonzero_squares()) {
    tri.push_back(plane->point_index({c, 0, 1}));
    tri.push_back(plane->point_index({0, f.neg(c), 1}));
    tri.push_back(plane->point_index({c, 1, 0}));
  }
  tri.push_back(plane->point_index({1, 0, 0}));
  tri.push_back(plane->point_index({0, 1, 0}));
  tri.push_back(plane->point_index({0, 0, 1}));
  std::sort(tri.begin(), tri.end());
  for (int i = 0; i < 5; ++i) {
    const auto g = random_collineation(f, rng);
    const auto img = apply(*plane, g, tri);
    const auto found = are_equivalent(*plane, tri, img);
    REQUIRE(found);
    CHECK(apply(*plane, *found, tri) == img);
    const auto back = are_equivalent(*plane, img, tri);
    REQUIRE(back);
    CHECK(apply(*plane, *back, img) == tri);
  }
  CHECK(are_equivalent(*plane, tri, tri));

  const std::vector<PointId> general{plane->point_index({1, 0, 0}), plane->point_index({0, 1, 0}),
                                     plane->point_index({0, 0, 1}), plane->point_index({1, 1, 1})};
  const std::vector<PointId> three_on_line{plane->point_index({1, 0, 0}), plane->point_index({0, 1, 0}),
                                           plane->point_index({1, 1, 0}), plane->point_index({0, 0, 1})};
  CHECK_FALSE(are_equivalent(*plane, general, three_on_line));
}

TEST_CASE("are_equivalent needs coordinates") {
  const auto gen = build_pg2(2);
  std::stringstream ss;
  write_plane(ss, *gen);
  const auto loaded = load_plane(ss);
  const std::vector<PointId> s{0, 1};
  try {
    are_equivalent(*loaded, s, s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedPlaneKind);
  }
}

TEST_CASE("Frobenius-only equivalence is found") {
  // Sets related by a field automorphism alone.
  const auto plane = build_pg2(8);
  const auto& f = plane->field();
  Collineation sigma;
  sigma.frobenius_exp = 1;
  std::vector<PointId> s{plane->point_index({1, 0, 0}), plane->point_index({0, 1, 0}), plane->point_index({0, 0, 1}),
                         plane->point_index({1, 1, 1}), plane->point_index({f.generator(), 1, 1}),
                         plane->point_index({f.exp(3), f.exp(5), 1})};
  std::sort(s.begin(), s.end());
  const auto img = apply(*plane, sigma, s);
  const auto found = are_equivalent(*plane, s, img);
  REQUIRE(found);
  CHECK(apply(*plane, *found, s) == img);
}

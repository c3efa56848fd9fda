#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "semiarc/collineation.hpp"
#include "semiarc/errors.hpp"
#include "semiarc/point_set.hpp"
#include "semiarc/search.hpp"

using namespace semiarc;

namespace {

using Family = std::set<std::vector<PointId>>;

Family as_family(const SearchCertificate& c) {
  Family out;
  for (auto w : c.witnesses) {
    std::sort(w.begin(), w.end());
    out.insert(w);
  }
  return out;
}

SearchOptions witnesses(bool symmetry, bool pruning) {
  SearchOptions o;
  o.mode = SearchMode::Witnesses;
  o.symmetry = symmetry;
  o.pruning = pruning;
  return o;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::EmptyPointSet;
}

}  // namespace

TEST_CASE("pruned search matches brute force") {
  for (unsigned q : {3u, 4u, 5u}) {
    const auto plane = build_pg2(q);
    for (unsigned t = 1; t + 2 <= q; ++t) {
      const auto fast = search_long_secant(plane, t, witnesses(false, true));
      const auto slow = search_long_secant(plane, t, witnesses(false, false));
      CHECK(fast.complete);
      CHECK(slow.complete);
      CHECK(as_family(fast) == as_family(slow));
      CHECK(fast.count == slow.count);
    }
  }
}

TEST_CASE("symmetry reduction keeps the anchored total") {
  const std::map<std::pair<unsigned, unsigned>, std::uint64_t> known{
      {{3, 1}, 72}, {{4, 1}, 0}, {{4, 2}, 600}, {{5, 2}, 1500}, {{5, 3}, 2000}, {{7, 3}, 5488}};
  for (const auto& [key, total] : known) {
    const auto plane = build_pg2(key.first);
    SearchOptions on, off;
    off.symmetry = false;
    const auto a = search_long_secant(plane, key.second, on);
    const auto b = search_long_secant(plane, key.second, off);
    CHECK(a.anchored_total == total);
    CHECK(b.anchored_total == total);
    CHECK(b.count == total);
    std::uint64_t weighted = 0;
    for (std::size_t i = 0; i < a.rep_counts.size(); ++i) weighted += a.rep_counts[i] * a.orbit_sizes[i];
    CHECK(weighted == total);
  }
}

TEST_CASE("every witness is a semiarc on the anchor") {
  for (unsigned q : {4u, 5u, 7u}) {
    const auto plane = build_pg2(q);
    for (unsigned t = 1; t + 2 <= q; ++t) {
      const auto c = search_long_secant(plane, t, witnesses(true, true));
      for (const auto& w : c.witnesses) {
        const PointSet s(plane, w);
        const auto r = classify_semiarc(s);
        REQUIRE(r.t);
        CHECK(*r.t == t);
        CHECK(s.on_line(0) == q + 1 - t);
      }
    }
  }
}

TEST_CASE("anchored solutions are closed under the line stabilizer") {
  const auto plane = build_pg2(4);
  const FiniteField& f = plane->field();
  const auto fam = as_family(search_long_secant(plane, 2, witnesses(false, true)));
  REQUIRE(fam.size() == 600);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    Collineation c;
    do {
      for (int k = 0; k < 6; ++k) c.matrix[static_cast<std::size_t>(k)] = static_cast<Elem>(rng() % 4);
      c.matrix[6] = c.matrix[7] = 0;
      c.matrix[8] = 1;
    } while (determinant(f, c.matrix) == 0);
    c.frobenius_exp = static_cast<unsigned>(rng() % 2);
    for (const auto& w : fam) {
      auto img = apply(*plane, c, w);
      std::sort(img.begin(), img.end());
      CHECK(fam.count(img) == 1);
    }
  }
}

TEST_CASE("removed-set orbits partition the t-subsets") {
  const auto plane = build_pg2(7);
  for (unsigned t = 1; t <= 5; ++t) {
    std::uint64_t total = 0;
    for (const auto& [rep, size] : removed_set_orbits(*plane, t)) {
      CHECK(rep.size() == t);
      total += size;
    }
    std::uint64_t binom = 1;
    for (unsigned i = 0; i < t; ++i) binom = binom * (8 - i) / (i + 1);
    CHECK(total == binom);
  }
  CHECK(removed_set_orbits(*plane, 3).size() == 1);  // PGL(2,q) is 3-transitive
  CHECK(removed_set_orbits(*plane, 4).size() == 2);
}

TEST_CASE("certificate round trip and tamper detection") {
  const auto plane = build_pg2(5);
  auto opts = witnesses(true, true);
  opts.mode = SearchMode::Classes;
  const auto c = search_long_secant(plane, 2, opts);
  REQUIRE(c.classes);
  CHECK(*c.classes == 1);
  const auto j = c.to_json();
  const auto back = SearchCertificate::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(j.dump() == search_long_secant(plane, 2, opts).to_json().dump());

  auto bad = j;
  bad["count"] = c.count + 1;
  CHECK(kind_of([&] { SearchCertificate::from_json(bad); }) == ErrorKind::MalformedCertificate);
  auto unsigned_cert = j;
  unsigned_cert.erase("signature");
  CHECK(kind_of([&] { SearchCertificate::from_json(unsigned_cert); }) == ErrorKind::MalformedCertificate);
}

TEST_CASE("partial certificates resume to the full result") {
  const auto plane = build_pg2(7);
  SearchOptions o = witnesses(false, true);
  const auto full = search_long_secant(plane, 4, o);
  REQUIRE(full.complete);

  SearchOptions part = o;
  part.max_units = 10;
  const auto first = search_long_secant(plane, 4, part);
  CHECK_FALSE(first.complete);
  CHECK(first.done_units.size() == 10);
  const auto j = first.to_json();
  CHECK(j.contains("frontier"));
  const auto reread = SearchCertificate::from_json(j);

  const auto second = search_long_secant(plane, 4, part, &reread);
  CHECK_FALSE(second.complete);
  CHECK(second.done_units.size() == 20);
  const auto last = search_long_secant(plane, 4, o, &second);
  CHECK(last.complete);
  CHECK(last.count == full.count);
  CHECK(as_family(last) == as_family(full));
  CHECK(last.to_json() == full.to_json());

  SearchOptions other = o;
  other.pruning = false;
  CHECK(kind_of([&] { search_long_secant(plane, 4, other, &reread); }) == ErrorKind::MalformedCertificate);
}

TEST_CASE("t outside the range is rejected") {
  const auto plane = build_pg2(5);
  CHECK(kind_of([&] { search_long_secant(plane, 0); }) == ErrorKind::InvalidT);
  CHECK(kind_of([&] { search_long_secant(plane, 4); }) == ErrorKind::InvalidT);
  CHECK(search_long_secant(build_pg2(2), 1).count == 4);
}

TEST_CASE("census uses the store") {
  const auto dir = std::filesystem::temp_directory_path() / "semiarc-test-store";
  std::filesystem::remove_all(dir);
  setenv("SEMIARC_STORE", dir.c_str(), 1);
  const auto plane = build_pg2(5);
  const auto first = census(plane, {}, true);
  REQUIRE(first.size() == 3);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 3);
  const auto second = census(plane, {}, true);
  for (std::size_t i = 0; i < 3; ++i) CHECK(first[i].to_json() == second[i].to_json());
  unsetenv("SEMIARC_STORE");
  std::filesystem::remove_all(dir);
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semiarc/constructions.hpp"
#include "semiarc/search.hpp"

namespace semiarc {

struct TheoremReport {
  std::string id;
  json range;
  bool passed = true;
  std::optional<json> counterexample;
  json details = json::object();

  json to_json() const;  // signed
};

struct TheoremOptions {
  /// Orders to test; empty selects the id's default range.
  std::vector<unsigned> qs;
  SearchOptions search;
  bool use_store = false;
  std::uint64_t seed = 1;
  unsigned samples = 10000;  // lemma0 instances per q
};

/**
 * Ids: hosszu i0 lemma0 ii1 j1 dovv le2 t1 notes thm gcd blok
 * corollary-triangle persp. Census-based ids throw CensusIncomplete when a
 * search stops early; unknown ids throw UnknownTheorem.
 */
TheoremReport verify_theorem(std::string_view id, const TheoremOptions& opts = {});

const std::vector<std::string>& theorem_ids();
std::vector<unsigned> default_range(std::string_view id);

/// Every construction family over the documented parameter grid.
struct GridEntry {
  std::string family;
  json params;
  std::optional<Construction> built;
  std::string rejected;  // CaseConstraintViolated message when not built
};
std::vector<GridEntry> construction_grid(unsigned q_max);

/// Exhaustive (q-2)-semiarcs of PG(2,q) by kind; sizes 4..7 are searched.
struct NotesCensus {
  unsigned q = 0;
  std::uint64_t quadrangles = 0;
  std::uint64_t quadrilaterals = 0;
  std::uint64_t fano = 0;
  std::uint64_t other = 0;
  std::optional<std::vector<PointId>> other_example;
};
NotesCensus notes_census(PlanePtr plane);

/// S lies in three non-concurrent lines minus their vertices.
bool in_vertexless_triangle(const PointSet& s);
/// S lies in three concurrent lines minus their common point.
bool in_punctured_pencil(const PointSet& s);

}  // namespace semiarc

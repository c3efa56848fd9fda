#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semiarc/certificate.hpp"
#include "semiarc/plane.hpp"

namespace semiarc {

enum class SearchMode { Count, Witnesses, Classes };

std::string_view to_string(SearchMode m);
std::optional<SearchMode> search_mode_from_string(std::string_view s);

struct SearchOptions {
  SearchMode mode = SearchMode::Count;
  /// Reduce the removed t-set D modulo PGammaL(2,q) acting on the anchor
  /// line. Generated planes only; ignored otherwise.
  bool symmetry = true;
  /// false: enumerate every candidate S \ l of admissible size and test it
  /// directly. Only sensible for q <= 5.
  bool pruning = true;
  unsigned jobs = 1;
  /// Stop handing out work units after this many seconds (0 = no limit).
  unsigned max_seconds = 0;
  /// Stop after this many new work units (0 = no limit).
  std::size_t max_units = 0;
  /// Maximum witnesses kept in the certificate (0 = all).
  std::size_t witness_limit = 0;
  /// Record wall time in the certificate (breaks byte-stability).
  bool timing = false;
};

/**
 * Exhaustive record for one (plane, t): all t-semiarcs S having the anchor
 * line 0 as a (q+1-t)-secant, with D = l \ S restricted to orbit
 * representatives when symmetry is on.
 */
struct SearchCertificate {
  std::string plane;
  unsigned q = 0;
  unsigned t = 0;
  LineId anchor = 0;
  SearchMode mode = SearchMode::Count;
  bool symmetry = false;
  bool pruning = true;
  std::vector<std::vector<PointId>> removed_reps;
  std::vector<std::uint64_t> orbit_sizes;
  std::vector<std::uint64_t> rep_counts;
  std::uint64_t count = 0;           // solutions with D among removed_reps
  std::uint64_t anchored_total = 0;  // sum of rep_counts weighted by orbit sizes
  std::vector<std::vector<PointId>> witnesses;
  bool witnesses_truncated = false;
  std::optional<std::size_t> classes;  // PGammaL(3,q) classes of the witnesses
  std::vector<std::vector<PointId>> class_reps;
  std::vector<std::size_t> class_sizes;
  bool complete = false;
  // resumable state, kept only while incomplete
  std::size_t units = 0;
  std::vector<std::size_t> done_units;
  std::vector<std::uint64_t> unit_counts;  // aligned with done_units
  std::optional<std::uint64_t> wall_time_ms;

  json to_json() const;  // signed
  static SearchCertificate from_json(const json& j);
  /// Store key: plane, t and the options that change the result.
  json store_key() const;
};

/**
 * Throws InvalidT unless 1 <= t <= q-2 (t = 1 is also accepted at q = 2).
 * `resume` must come from an earlier run with the same plane, t and
 * options; its finished work units are not repeated.
 */
SearchCertificate search_long_secant(PlanePtr plane, unsigned t, const SearchOptions& opts = {},
                                     const SearchCertificate* resume = nullptr);

/// t-sets of the anchor line up to PGammaL(2,q): least member and orbit size.
std::vector<std::pair<std::vector<PointId>, std::uint64_t>> removed_set_orbits(const Plane& plane, unsigned t);

/// One certificate per t in [1, q-2]. Uses and fills the certificate store
/// when `use_store` is set.
std::vector<SearchCertificate> census(PlanePtr plane, const SearchOptions& opts = {}, bool use_store = false);

}  // namespace semiarc

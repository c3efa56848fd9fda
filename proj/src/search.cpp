#include "semiarc/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "semiarc/collineation.hpp"
#include "semiarc/errors.hpp"

namespace semiarc {

std::string_view to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Count: return "count";
    case SearchMode::Witnesses: return "witnesses";
    case SearchMode::Classes: return "classes";
  }
  return "count";
}

std::optional<SearchMode> search_mode_from_string(std::string_view s) {
  for (auto m : {SearchMode::Count, SearchMode::Witnesses, SearchMode::Classes}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

json SearchCertificate::store_key() const {
  return json{{"plane", plane},       {"t", t},         {"anchor", anchor},
              {"mode", to_string(mode)}, {"symmetry", symmetry}, {"pruning", pruning}};
}

json SearchCertificate::to_json() const {
  json j{{"kind", "search"},
         {"plane", plane},
         {"q", q},
         {"t", t},
         {"anchor", anchor},
         {"mode", to_string(mode)},
         {"symmetry", symmetry},
         {"pruning", pruning ? json::array({"tangent-budget", "d-line-capacity", "size-window"}) : json::array()},
         {"removed_reps", removed_reps},
         {"orbit_sizes", orbit_sizes},
         {"rep_counts", rep_counts},
         {"count", count},
         {"anchored_total", anchored_total},
         {"complete", complete}};
  if (mode != SearchMode::Count || !witnesses.empty()) {
    j["witnesses"] = witnesses;
    j["witnesses_truncated"] = witnesses_truncated;
  }
  if (classes) {
    j["classes"] = *classes;
    j["class_reps"] = class_reps;
    j["class_sizes"] = class_sizes;
  }
  if (!complete) {
    j["frontier"] = {{"units", units}, {"done", done_units}, {"unit_counts", unit_counts}};
  }
  if (wall_time_ms) j["wall_time_ms"] = *wall_time_ms;
  return sign(std::move(j));
}

SearchCertificate SearchCertificate::from_json(const json& j) {
  check_signature(j);
  try {
    if (j.at("kind") != "search") throw Error(ErrorKind::MalformedCertificate, "not a search certificate");
    SearchCertificate c;
    c.plane = j.at("plane").get<std::string>();
    c.q = j.at("q").get<unsigned>();
    c.t = j.at("t").get<unsigned>();
    c.anchor = j.at("anchor").get<LineId>();
    const auto mode = search_mode_from_string(j.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorKind::MalformedCertificate, "unknown search mode");
    c.mode = *mode;
    c.symmetry = j.at("symmetry").get<bool>();
    c.pruning = !j.at("pruning").empty();
    c.removed_reps = j.at("removed_reps").get<std::vector<std::vector<PointId>>>();
    c.orbit_sizes = j.at("orbit_sizes").get<std::vector<std::uint64_t>>();
    c.rep_counts = j.at("rep_counts").get<std::vector<std::uint64_t>>();
    c.count = j.at("count").get<std::uint64_t>();
    c.anchored_total = j.at("anchored_total").get<std::uint64_t>();
    c.complete = j.at("complete").get<bool>();
    if (j.contains("witnesses")) {
      c.witnesses = j["witnesses"].get<std::vector<std::vector<PointId>>>();
      c.witnesses_truncated = j.at("witnesses_truncated").get<bool>();
    }
    if (j.contains("classes")) {
      c.classes = j["classes"].get<std::size_t>();
      c.class_reps = j.at("class_reps").get<std::vector<std::vector<PointId>>>();
      c.class_sizes = j.at("class_sizes").get<std::vector<std::size_t>>();
    }
    if (j.contains("frontier")) {
      const auto& f = j["frontier"];
      c.units = f.at("units").get<std::size_t>();
      c.done_units = f.at("done").get<std::vector<std::size_t>>();
      c.unit_counts = f.at("unit_counts").get<std::vector<std::uint64_t>>();
    }
    if (j.contains("wall_time_ms")) c.wall_time_ms = j["wall_time_ms"].get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedCertificate, e.what());
  }
}

namespace {

std::vector<std::pair<std::vector<PointId>, std::uint64_t>> anchor_subsets(const Plane& plane, unsigned t,
                                                                           bool reduce) {
  const unsigned q = plane.order();
  const auto ell = plane.points_on(0);
  const unsigned n = q + 1;
  std::vector<std::uint64_t> masks;
  std::vector<unsigned> comb(t);
  std::iota(comb.begin(), comb.end(), 0u);
  while (true) {
    std::uint64_t m = 0;
    for (unsigned i : comb) m |= std::uint64_t{1} << i;
    masks.push_back(m);
    int i = static_cast<int>(t) - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - t + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (auto k = static_cast<std::size_t>(i) + 1; k < t; ++k) comb[k] = comb[k - 1] + 1;
  }
  auto to_points = [&](std::uint64_t m) {
    std::vector<PointId> out;
    for (unsigned i = 0; i < n; ++i) {
      if (m >> i & 1) out.push_back(ell[i]);
    }
    return out;
  };
  std::vector<std::pair<std::vector<PointId>, std::uint64_t>> out;
  if (!reduce || !plane.has_coordinates()) {
    for (auto m : masks) out.emplace_back(to_points(m), 1);
    return out;
  }
  const FiniteField& f = plane.field();
  // PGammaL(2,q) on the line x2 = 0: translation, dilation, swap, Frobenius.
  std::vector<Collineation> gens;
  gens.push_back({Mat3{1, 1, 0, 0, 1, 0, 0, 0, 1}, 0});
  gens.push_back({Mat3{f.generator(), 0, 0, 0, 1, 0, 0, 0, 1}, 0});
  gens.push_back({Mat3{0, 1, 0, 1, 0, 0, 0, 0, 1}, 0});
  if (f.degree() > 1) gens.push_back({identity_matrix(), 1});
  std::unordered_map<PointId, unsigned> local;
  for (unsigned i = 0; i < n; ++i) local[ell[i]] = i;
  std::vector<std::vector<unsigned>> perms;
  for (const auto& g : gens) {
    std::vector<unsigned> perm(n);
    for (unsigned i = 0; i < n; ++i) perm[i] = local.at(apply(plane, g, ell[i]));
    perms.push_back(std::move(perm));
  }
  std::unordered_map<std::uint64_t, std::uint32_t> id;
  id.reserve(masks.size() * 2);
  for (std::uint32_t i = 0; i < masks.size(); ++i) id[masks[i]] = i;
  std::vector<std::uint32_t> parent(masks.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t i = 0; i < masks.size(); ++i) {
    for (const auto& perm : perms) {
      std::uint64_t img = 0;
      for (unsigned b = 0; b < n; ++b) {
        if (masks[i] >> b & 1) img |= std::uint64_t{1} << perm[b];
      }
      auto a = find(i), c = find(id.at(img));
      if (a != c) parent[std::max(a, c)] = std::min(a, c);
    }
  }
  std::map<std::uint32_t, std::uint64_t> sizes;
  for (std::uint32_t i = 0; i < masks.size(); ++i) ++sizes[find(i)];
  for (const auto& [root, size] : sizes) out.emplace_back(to_points(masks[root]), size);
  return out;
}

}  // namespace

std::vector<std::pair<std::vector<PointId>, std::uint64_t>> removed_set_orbits(const Plane& plane, unsigned t) {
  return anchor_subsets(plane, t, true);
}

namespace {

using Clock = std::chrono::steady_clock;

struct UnitResult {
  bool done = false;
  std::uint64_t count = 0;
  std::vector<std::vector<PointId>> witnesses;
};

class Searcher {
 public:
  Searcher(const Plane& pl, unsigned t, const std::vector<PointId>& ell_of_line, bool collect,
           const std::atomic<bool>& stop)
      : pl_(pl), q_(pl.order()), t_(t), need_(pl.order() - t), ell_of_line_(ell_of_line), collect_(collect),
        stop_(stop), cnt_(pl.size(), 0), hit_(pl.size(), 0), role_(pl.size(), 0) {}

  /// role: 1 = kept point of the anchor line, 2 = removed point.
  void set_removed(const std::vector<PointId>& d) {
    std::fill(role_.begin(), role_.end(), 0);
    for (PointId p : pl_.points_on(0)) role_[p] = 1;
    for (PointId p : d) role_[p] = 2;
    keep_.clear();
    for (PointId p : pl_.points_on(0)) {
      if (role_[p] == 1) keep_.push_back(p);
    }
    levels_.clear();
    for (LineId l : pl_.lines_through(d[0])) {
      if (l == 0) continue;
      std::vector<PointId> pts;
      for (PointId p : pl_.points_on(l)) {
        if (p != d[0]) pts.push_back(p);
      }
      levels_.push_back(std::move(pts));
    }
  }

  std::size_t first_level_choices() const { return levels_[0].size() + 1; }

  /// choice 0 leaves the first line empty, k picks its k-th affine point.
  bool run_pruned(std::size_t choice, UnitResult& out) {
    out_ = &out;
    if (choice == 0) {
      dfs(1);
    } else if (add(levels_[0][choice - 1])) {
      u_.push_back(levels_[0][choice - 1]);
      dfs(1);
      u_.pop_back();
      remove(levels_[0][choice - 1]);
    }
    return !aborted_;
  }

  /// Every affine subset of admissible size, tested from scratch.
  bool run_brute(UnitResult& out) {
    out_ = &out;
    affine_.clear();
    for (PointId p = 0; p < pl_.size(); ++p) {
      if (!pl_.incident(p, 0)) affine_.push_back(p);
    }
    brute(0);
    return !aborted_;
  }

 private:
  bool tick() {
    if ((++nodes_ & 0x3fff) == 0 && stop_.load(std::memory_order_relaxed)) aborted_ = true;
    return !aborted_;
  }

  bool add(PointId u) {
    for (LineId l : pl_.lines_through(u)) {
      const PointId e = ell_of_line_[l];
      if (role_[e] == 2 && cnt_[l] > 0) return false;
      if (role_[e] == 1 && cnt_[l] == 0 && hit_[e] == need_) return false;
    }
    for (LineId l : pl_.lines_through(u)) {
      if (cnt_[l]++ == 0 && role_[ell_of_line_[l]] == 1) ++hit_[ell_of_line_[l]];
    }
    return true;
  }

  void remove(PointId u) {
    for (LineId l : pl_.lines_through(u)) {
      if (--cnt_[l] == 0 && role_[ell_of_line_[l]] == 1) --hit_[ell_of_line_[l]];
    }
  }

  void record() {
    ++out_->count;
    if (!collect_) return;
    std::vector<PointId> s = keep_;
    s.insert(s.end(), u_.begin(), u_.end());
    std::sort(s.begin(), s.end());
    out_->witnesses.push_back(std::move(s));
  }

  void dfs(std::size_t level) {
    if (!tick()) return;
    const auto rem = static_cast<unsigned>(q_ - level);
    if (u_.size() + rem < need_) return;
    for (PointId a : keep_) {
      if (hit_[a] + rem < need_) return;
    }
    if (level == q_) {
      record();
      return;
    }
    if (u_.size() + rem - 1 >= need_) dfs(level + 1);
    for (PointId p : levels_[level]) {
      if (!add(p)) continue;
      u_.push_back(p);
      dfs(level + 1);
      u_.pop_back();
      remove(p);
      if (aborted_) return;
    }
  }

  bool brute_check() {
    for (PointId p : keep_) {
      if (tangents(p) != t_) return false;
    }
    for (PointId p : u_) {
      if (tangents(p) != t_) return false;
    }
    return true;
  }

  unsigned tangents(PointId p) const {
    unsigned n = 0;
    for (LineId l : pl_.lines_through(p)) n += line_hits(l) == 1;
    return n;
  }

  unsigned line_hits(LineId l) const {
    unsigned n = cnt_[l];
    if (l == 0) return static_cast<unsigned>(keep_.size());
    return n + (role_[ell_of_line_[l]] == 1 ? 1 : 0);
  }

  void brute(std::size_t from) {
    if (!tick()) return;
    if (u_.size() >= need_ && brute_check()) record();
    if (u_.size() == q_) return;
    for (std::size_t i = from; i < affine_.size(); ++i) {
      const PointId p = affine_[i];
      for (LineId l : pl_.lines_through(p)) ++cnt_[l];
      u_.push_back(p);
      brute(i + 1);
      u_.pop_back();
      for (LineId l : pl_.lines_through(p)) --cnt_[l];
      if (aborted_) return;
    }
  }

  const Plane& pl_;
  unsigned q_, t_, need_;
  const std::vector<PointId>& ell_of_line_;
  bool collect_;
  const std::atomic<bool>& stop_;
  std::vector<unsigned> cnt_;
  std::vector<unsigned> hit_;
  std::vector<unsigned char> role_;
  std::vector<PointId> keep_;
  std::vector<std::vector<PointId>> levels_;
  std::vector<PointId> affine_;
  std::vector<PointId> u_;
  UnitResult* out_ = nullptr;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

std::vector<unsigned> set_invariant(const Plane& plane, const std::vector<PointId>& s) {
  PointMask mask(plane.size());
  for (PointId p : s) mask.set(p);
  std::vector<std::vector<unsigned>> sigs;
  for (PointId p : s) sigs.push_back(point_signature(plane, mask, p));
  std::sort(sigs.begin(), sigs.end());
  std::vector<unsigned> flat{static_cast<unsigned>(s.size())};
  for (const auto& sg : sigs) {
    flat.insert(flat.end(), sg.begin(), sg.end());
    flat.push_back(~0u);
  }
  return flat;
}

void compute_classes(const Plane& plane, SearchCertificate& cert) {
  std::map<std::vector<unsigned>, std::vector<std::size_t>> buckets;  // invariant -> class ids
  for (const auto& w : cert.witnesses) {
    auto& ids = buckets[set_invariant(plane, w)];
    bool placed = false;
    for (std::size_t id : ids) {
      if (!plane.has_coordinates() || are_equivalent(plane, cert.class_reps[id], w)) {
        ++cert.class_sizes[id];
        placed = true;
        break;
      }
    }
    if (!placed) {
      ids.push_back(cert.class_reps.size());
      cert.class_reps.push_back(w);
      cert.class_sizes.push_back(1);
    }
  }
  cert.classes = cert.class_reps.size();
}

}  // namespace

SearchCertificate search_long_secant(PlanePtr plane_ptr, unsigned t, const SearchOptions& opts,
                                     const SearchCertificate* resume) {
  const Plane& plane = *plane_ptr;
  const unsigned q = plane.order();
  const bool q2_special = q == 2 && t == 1;
  if (t < 1 || (t + 2 > q && !q2_special)) {
    throw Error(ErrorKind::InvalidT, "t = " + std::to_string(t) + " outside 1..q-2 for q = " + std::to_string(q));
  }
  const auto start = Clock::now();
  SearchCertificate cert;
  cert.plane = plane.ref();
  cert.q = q;
  cert.t = t;
  cert.mode = opts.mode;
  cert.pruning = opts.pruning;

  // Orbit reduction needs coordinates and a manageable number of t-sets.
  double subsets = 1;
  for (unsigned i = 0; i < t; ++i) subsets = subsets * (q + 1 - i) / (i + 1);
  cert.symmetry = opts.symmetry && plane.has_coordinates();
  if (subsets > 2e6) {
    throw Error(ErrorKind::InvalidT, "too many removed t-sets on the anchor line");
  }
  for (auto& [rep, size] : anchor_subsets(plane, t, cert.symmetry)) {
    cert.removed_reps.push_back(std::move(rep));
    cert.orbit_sizes.push_back(size);
  }
  if (resume) {
    const json a = resume->store_key(), b = cert.store_key();
    if (a != b) throw Error(ErrorKind::MalformedCertificate, "resume certificate is for a different search");
  }

  std::vector<PointId> ell_of_line(plane.size(), 0);
  for (LineId l = 1; l < plane.size(); ++l) ell_of_line[l] = plane.meet(l, 0);

  const std::size_t per_rep = opts.pruning ? q + 1 : 1;
  const std::size_t nunits = cert.removed_reps.size() * per_rep;
  std::vector<UnitResult> results(nunits);
  if (resume && resume->units == nunits && !resume->complete) {
    for (std::size_t i = 0; i < resume->done_units.size(); ++i) {
      results[resume->done_units[i]].done = true;
      results[resume->done_units[i]].count = resume->unit_counts[i];
    }
  }
  const bool collect = opts.mode != SearchMode::Count;

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> started{0};
  auto worker = [&]() {
    Searcher s(plane, t, ell_of_line, collect, stop);
    std::size_t current_rep = static_cast<std::size_t>(-1);
    while (true) {
      const std::size_t u = next.fetch_add(1);
      if (u >= nunits) break;
      if (results[u].done) continue;
      if (stop) break;
      if (opts.max_units && started.fetch_add(1) >= opts.max_units) break;
      const std::size_t rep = u / per_rep;
      if (rep != current_rep) {
        s.set_removed(cert.removed_reps[rep]);
        current_rep = rep;
      }
      UnitResult r;
      const bool finished = opts.pruning ? s.run_pruned(u % per_rep, r) : s.run_brute(r);
      if (!finished) break;
      r.done = true;
      results[u] = std::move(r);
    }
  };
  std::thread watchdog;
  std::atomic<bool> finished_all{false};
  if (opts.max_seconds) {
    watchdog = std::thread([&] {
      while (!finished_all) {
        if (Clock::now() - start >= std::chrono::seconds(opts.max_seconds)) {
          stop = true;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
    });
  }
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  finished_all = true;
  if (watchdog.joinable()) watchdog.join();

  cert.units = nunits;
  cert.rep_counts.assign(cert.removed_reps.size(), 0);
  std::vector<std::vector<PointId>> all;
  if (resume && collect) all = resume->witnesses;
  cert.complete = true;
  for (std::size_t u = 0; u < nunits; ++u) {
    if (!results[u].done) {
      cert.complete = false;
      continue;
    }
    cert.done_units.push_back(u);
    cert.unit_counts.push_back(results[u].count);
    cert.rep_counts[u / per_rep] += results[u].count;
    for (auto& w : results[u].witnesses) all.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < cert.rep_counts.size(); ++i) {
    cert.count += cert.rep_counts[i];
    cert.anchored_total += cert.rep_counts[i] * cert.orbit_sizes[i];
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  cert.witnesses = std::move(all);
  if (cert.complete) {
    cert.done_units.clear();
    cert.unit_counts.clear();
    if (opts.mode == SearchMode::Classes) compute_classes(plane, cert);
  }
  if (opts.witness_limit && cert.witnesses.size() > opts.witness_limit && cert.complete) {
    cert.witnesses.resize(opts.witness_limit);
    cert.witnesses_truncated = true;
  }
  if (opts.timing) {
    cert.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  }
  return cert;
}

std::vector<SearchCertificate> census(PlanePtr plane, const SearchOptions& opts, bool use_store) {
  std::vector<SearchCertificate> out;
  const unsigned q = plane->order();
  for (unsigned t = 1; t + 2 <= q; ++t) {
    std::optional<SearchCertificate> prior;
    if (use_store) {
      SearchCertificate probe;
      probe.plane = plane->ref();
      probe.t = t;
      probe.mode = opts.mode;
      probe.symmetry = opts.symmetry && plane->has_coordinates();
      probe.pruning = opts.pruning;
      if (auto j = store_read(probe.store_key())) prior = SearchCertificate::from_json(*j);
      if (prior && prior->complete) {
        out.push_back(std::move(*prior));
        continue;
      }
    }
    auto cert = search_long_secant(plane, t, opts, prior ? &*prior : nullptr);
    if (use_store) store_write(cert.store_key(), cert.to_json());
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace semiarc

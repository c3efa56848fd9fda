// semiarc command-line front end.
//
// Exit status: 0 success, 1 verified-false, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "semiarc/bounds.hpp"
#include "semiarc/collineation.hpp"
#include "semiarc/constructions.hpp"
#include "semiarc/errors.hpp"
#include "semiarc/search.hpp"
#include "semiarc/theorems.hpp"

using namespace semiarc;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<unsigned> parse_list(const std::string& s) {
  std::vector<unsigned> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw UsageError("not a number: '" + tok + "'");
    }
  }
  return out;
}

// "5", "4,5,7" or "4..8" (prime powers in the closed range)
std::vector<unsigned> parse_orders(const std::string& s) {
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = parse_list(s.substr(0, dots)), hi = parse_list(s.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw UsageError("bad range '" + s + "'");
    std::vector<unsigned> out;
    for (unsigned q = std::max(2u, lo[0]); q <= hi[0]; ++q) {
      if (prime_power(q)) out.push_back(q);
    }
    return out;
  }
  return parse_list(s);
}

json read_json_source(const std::string& src) {
  try {
    if (src == "-") return json::parse(std::cin);
    std::ifstream in(src);
    if (!in) throw UsageError("cannot open " + src);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(src + ": " + e.what());
  }
}

// Inline "1,2,3", inline JSON array, or a JSON file holding an array or an
// object with a "points" member.
std::vector<PointId> parse_points(const std::string& arg) {
  if (!arg.empty() && (std::isdigit(static_cast<unsigned char>(arg[0])) != 0)) return parse_list(arg);
  const json j = (!arg.empty() && arg[0] == '[') ? json::parse(arg) : read_json_source(arg);
  const json& arr = j.is_object() ? j.at("points") : j;
  if (!arr.is_array()) throw UsageError("points must be a JSON array");
  return arr.get<std::vector<PointId>>();
}

PlanePtr resolve_plane(const std::string& ref, unsigned q) {
  if (!ref.empty()) return plane_from_ref(ref);
  if (q == 0) throw UsageError("give --plane or --q");
  return plane_from_ref("pg:" + std::to_string(q));
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump() << '\n';
    return;
  }
  std::ofstream out(out_path);
  out << j.dump() << '\n';
  if (!out) throw UsageError("cannot write " + out_path);
}

json points_json(const PointSet& s) { return std::vector<PointId>(s.points().begin(), s.points().end()); }

// ---- construct ------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::string plane;
  unsigned q = 0;
  unsigned t = 0, n = 1, d = 1, h1 = 0, sub_degree = 0;
  std::string lines, removed1, removed2, orbits, x, a, chain, subset, z;
};

json request_json(const ConstructArgs& c, const Plane& plane) {
  json r{{"family", c.family}, {"plane", plane.ref()}};
  auto put_list = [&](const char* k, const std::string& v) {
    if (!v.empty()) r[k] = parse_list(v);
  };
  const std::string& f = c.family;
  if (f == "vt-config") {
    r["t"] = c.t;
    put_list("lines", c.lines);
    put_list("removed1", c.removed1);
    put_list("removed2", c.removed2);
  } else if (f.rfind("thm-", 0) == 0) {
    r["n"] = c.n;
    r["d"] = c.d;
    r["h1"] = c.h1;
    put_list("orbits", c.orbits);
    put_list("x", c.x);
  } else if (f == "suetake") {
    put_list("a", c.a);
  } else if (f.rfind("km-", 0) == 0) {
    put_list("chain", c.chain);
    put_list("subset", c.subset);
    put_list("z", c.z);
  } else if (f.rfind("conic-", 0) == 0) {
    r["sub_degree"] = c.sub_degree;
  }
  return r;
}

Construction build_from_request(const json& r) {
  const auto plane = plane_from_ref(r.at("plane").get<std::string>());
  const std::string f = r.at("family");
  auto list = [&](const char* k) {
    return r.contains(k) ? r[k].get<std::vector<unsigned>>() : std::vector<unsigned>{};
  };
  if (f == "projective-triangle") return projective_triangle(plane);
  if (f == "vt-config") {
    const auto ls = list("lines");
    const LineId l1 = ls.size() > 0 ? ls[0] : 0, l2 = ls.size() > 1 ? ls[1] : 1;
    if (r.contains("removed1") || r.contains("removed2")) {
      return vt_configuration(plane, l1, l2, r.at("t"), list("removed1"), list("removed2"));
    }
    return vt_configuration(plane, l1, l2, r.at("t"));
  }
  if (f.rfind("thm-", 0) == 0) {
    const auto which = thm_case_from_string(f);
    if (!which) throw UsageError("unknown family " + f);
    ThmParams tp;
    tp.n = r.at("n");
    tp.d = r.at("d");
    tp.h1 = r.at("h1");
    tp.orbits = list("orbits");
    if (r.contains("x")) tp.x = list("x");
    return build_thm_case(plane, *which, tp);
  }
  if (f == "suetake") {
    const auto a = list("a");
    return suetake(plane, std::vector<Elem>(a.begin(), a.end()));
  }
  if (f.rfind("km-", 0) == 0 && f.size() == 4) {
    KmParams kp;
    kp.chain = list("chain");
    kp.subset = list("subset");
    if (r.contains("z")) kp.z = list("z");
    return km_example(plane, static_cast<unsigned>(f[3] - '0'), kp);
  }
  if (f.rfind("conic-", 0) == 0 && f.size() == 7) {
    return conic_example(plane, static_cast<unsigned>(f[6] - '0'), r.at("sub_degree"));
  }
  if (f.rfind("qm2-", 0) == 0) {
    const auto kind = qm2_kind_from_string(f.substr(4));
    if (!kind) throw UsageError("unknown family " + f);
    return q_minus_2_family(plane, *kind);
  }
  throw UsageError("unknown family '" + f + "'");
}

json construction_certificate(const json& request, const Construction& c) {
  const auto chk = check_construction(c);
  json j{{"kind", "construction"},
         {"family", c.family},
         {"request", request},
         {"params", c.params},
         {"plane", c.set.plane().ref()},
         {"points", points_json(c.set)},
         {"size", c.set.size()},
         {"claimed_t", c.claimed_t},
         {"claimed_type", std::string(to_string(c.claimed_type))},
         {"t", chk.t ? json(*chk.t) : json(nullptr)},
         {"open_witnesses", chk.open_witnesses},
         {"closed_witnesses", chk.closed_witnesses},
         {"verified", chk.ok()}};
  if (c.lines) j["lines"] = {c.lines->first, c.lines->second};
  return sign(std::move(j));
}

// ---- classify -------------------------------------------------------------

json classification(const PointSet& s) {
  const auto r = classify_semiarc(s);
  json j{{"kind", "classification"}, {"plane", s.plane().ref()}, {"points", points_json(s)},
         {"size", s.size()},         {"tangent_counts", r.tangent_counts}, {"is_semiarc", r.is_semiarc()}};
  j["t"] = r.t ? json(*r.t) : json(nullptr);
  if (!r.offending.empty()) j["offending"] = r.offending;
  json spectrum = json::object();
  for (const auto& [k, v] : secant_spectrum(s)) spectrum[std::to_string(k)] = v;
  j["secant_spectrum"] = spectrum;
  const auto red = redei_analysis(s);
  j["blocking"] = {{"is_blocking", red.is_blocking},
                   {"is_minimal", red.is_minimal},
                   {"is_nontrivial", red.is_nontrivial},
                   {"redei_lines", red.redei_lines}};
  if (r.t) {
    j["long_secants"] = long_secants(s, *r.t);
    json vt = json::array();
    for (const auto& w : detect_vt(s, *r.t)) {
      vt.push_back({{"l1", w.l1}, {"l2", w.l2}, {"vertex", w.vertex}, {"type", w.is_open() ? "open" : "closed"}});
    }
    j["vt_witnesses"] = vt;
    json ids = json::array();
    for (const auto& c : check_counting_identities(s).checks) {
      ids.push_back({{"name", c.name}, {"holds", c.holds}, {"instances", c.instances}});
    }
    j["identities"] = ids;
  }
  return sign(std::move(j));
}

// ---- equiv ----------------------------------------------------------------

json equivalence(const Plane& plane, const std::vector<PointId>& a, const std::vector<PointId>& b) {
  json j{{"kind", "equivalence"}, {"plane", plane.ref()}, {"a", a}, {"b", b}};
  const auto c = a.size() == b.size() ? are_equivalent(plane, a, b) : std::nullopt;
  j["equivalent"] = c.has_value();
  if (c) j["collineation"] = {{"matrix", c->matrix}, {"frobenius_exp", c->frobenius_exp}};
  return sign(std::move(j));
}

std::vector<PointId> sorted(std::vector<PointId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---- verify ---------------------------------------------------------------

json drop_volatile(json j) {
  j.erase("wall_time_ms");
  j.erase("signature");
  return j;
}

json verify_certificate(const json& cert) {
  check_signature(cert);
  const std::string kind = cert.value("kind", "");
  json out{{"kind", "verification"}, {"subject", kind}};
  bool ok = false;
  if (kind == "construction") {
    const auto c = build_from_request(cert.at("request"));
    const auto again = construction_certificate(cert.at("request"), c);
    const bool same = drop_volatile(again) == drop_volatile(cert);
    ok = same && again.at("verified").get<bool>();
    out["rebuilt_matches"] = same;
    out["claims_hold"] = again.at("verified");
  } else if (kind == "search") {
    const auto c = SearchCertificate::from_json(cert);
    const auto plane = plane_from_ref(c.plane);
    bool witnesses_ok = true;
    for (const auto& w : c.witnesses) {
      const PointSet s(plane, w);
      const auto r = classify_semiarc(s);
      witnesses_ok = witnesses_ok && r.t == c.t && s.on_line(c.anchor) == c.q + 1 - c.t;
    }
    out["witnesses_ok"] = witnesses_ok;
    ok = witnesses_ok;
    if (c.complete) {
      SearchOptions o;
      o.mode = c.mode;
      o.symmetry = c.symmetry;
      o.pruning = c.pruning;
      if (c.witnesses_truncated) o.witness_limit = c.witnesses.size();
      const auto again = search_long_secant(plane, c.t, o);
      const bool same = drop_volatile(again.to_json()) == drop_volatile(cert);
      out["replay_matches"] = same;
      ok = ok && same;
    }
  } else if (kind == "census") {
    ok = true;
    json parts = json::array();
    for (const auto& sub : cert.at("certificates")) {
      const auto v = verify_certificate(sub);
      parts.push_back(v.at("ok"));
      ok = ok && v.at("ok").get<bool>();
    }
    out["parts"] = parts;
  } else if (kind == "theorem") {
    TheoremOptions o;
    o.qs = cert.at("range").get<std::vector<unsigned>>();
    if (cert.contains("options")) {
      o.seed = cert["options"].value("seed", o.seed);
      o.samples = cert["options"].value("samples", o.samples);
    }
    auto again = verify_theorem(cert.at("id").get<std::string>(), o).to_json();
    if (cert.contains("options")) again["options"] = cert["options"];
    const bool same = drop_volatile(sign(again)) == drop_volatile(cert);
    out["replay_matches"] = same;
    ok = same && cert.at("passed").get<bool>();
  } else if (kind == "classification") {
    const auto plane = plane_from_ref(cert.at("plane"));
    const auto again = classification(PointSet(plane, cert.at("points").get<std::vector<PointId>>()));
    ok = again == cert;
    out["replay_matches"] = ok;
  } else if (kind == "equivalence") {
    const auto plane = plane_from_ref(cert.at("plane"));
    const auto a = cert.at("a").get<std::vector<PointId>>(), b = cert.at("b").get<std::vector<PointId>>();
    if (cert.at("equivalent").get<bool>()) {
      Collineation c;
      c.matrix = cert.at("collineation").at("matrix").get<Mat3>();
      c.frobenius_exp = cert.at("collineation").at("frobenius_exp");
      ok = sorted(apply(*plane, c, a)) == sorted(b);
    } else {
      ok = !are_equivalent(*plane, a, b);
    }
    out["replay_matches"] = ok;
  } else {
    throw Error(ErrorKind::MalformedCertificate, "unknown certificate kind '" + kind + "'");
  }
  out["ok"] = ok;
  return sign(std::move(out));
}

int run(int argc, char** argv) {
  CLI::App app{"Semiarcs in finite projective planes"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--out", out_path, "Write the JSON result to this file");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a construction family and certify it");
  construct->add_option("family", ca.family, "Family id")->required();
  construct->add_option("--plane", ca.plane, "pg:<q> or file:<path>");
  construct->add_option("--q", ca.q, "Order of PG(2,q)");
  construct->add_option("--t", ca.t, "vt-config: removed points per leg");
  construct->add_option("--lines", ca.lines, "vt-config: l1,l2");
  construct->add_option("--removed1", ca.removed1);
  construct->add_option("--removed2", ca.removed2);
  construct->add_option("--n", ca.n, "thm: order of A");
  construct->add_option("--d", ca.d, "thm: scalar subfield degree");
  construct->add_option("--h1", ca.h1, "thm: dimension of B over GF(p^d)");
  construct->add_option("--orbits", ca.orbits, "thm: orbit indices I");
  construct->add_option("--x", ca.x, "thm-II-ii: explicit X");
  construct->add_option("--a", ca.a, "suetake: the set A");
  construct->add_option("--chain", ca.chain, "km: subfield degrees ending at r");
  construct->add_option("--subset", ca.subset, "km: the index set I");
  construct->add_option("--z", ca.z, "km: explicit Z");
  construct->add_option("--sub-degree", ca.sub_degree, "conic: degree of the subfield GF(s)");

  std::string plane_ref, points_arg, points_b;
  unsigned q = 0;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  std::string in_path = "-";
  verify->add_option("input", in_path, "Certificate file, '-' for stdin");

  auto* classify = app.add_subcommand("classify", "Tangent counts, secants, V_t witnesses of a point set");
  classify->add_option("--plane", plane_ref);
  classify->add_option("--q", q);
  classify->add_option("--points", points_arg, "1,2,3 or a JSON file")->required();

  unsigned t = 0, jobs = 1, max_seconds = 0;
  std::size_t witness_limit = 0;
  std::string mode = "count", resume_path;
  bool no_symmetry = false, no_pruning = false, timing = false, use_store = false;
  auto add_search_flags = [&](CLI::App* sc) {
    sc->add_option("--plane", plane_ref);
    sc->add_option("--q", q);
    sc->add_option("--mode", mode, "count | witnesses | classes");
    sc->add_flag("--no-symmetry", no_symmetry);
    sc->add_flag("--no-pruning", no_pruning);
    sc->add_option("--jobs", jobs);
    sc->add_option("--max-seconds", max_seconds);
    sc->add_option("--witness-limit", witness_limit);
    sc->add_flag("--timing", timing);
  };
  auto* search = app.add_subcommand("search", "Exhaustive search for t-semiarcs with a long secant");
  add_search_flags(search);
  search->add_option("--t", t)->required();
  search->add_option("--resume", resume_path, "Partial certificate to continue");

  auto* census_cmd = app.add_subcommand("census", "Search every t in 1..q-2");
  add_search_flags(census_cmd);
  census_cmd->add_flag("--store", use_store, "Read and fill the certificate store");

  std::string theorem_id, orders;
  std::uint64_t seed = 1;
  unsigned samples = 10000;
  auto* check = app.add_subcommand("check", "Verify a statement over a range of orders");
  check->add_option("id", theorem_id)->required();
  check->add_option("--q", orders, "5, 4,5,7 or 4..8");
  check->add_option("--jobs", jobs);
  check->add_option("--seed", seed);
  check->add_option("--samples", samples);
  check->add_flag("--store", use_store);

  auto* equiv = app.add_subcommand("equiv", "Projective equivalence of two point sets");
  equiv->add_option("--plane", plane_ref);
  equiv->add_option("--q", q);
  equiv->add_option("--a", points_arg)->required();
  equiv->add_option("--b", points_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  auto search_opts = [&] {
    SearchOptions o;
    const auto m = search_mode_from_string(mode);
    if (!m) throw UsageError("unknown mode '" + mode + "'");
    o.mode = *m;
    o.symmetry = !no_symmetry;
    o.pruning = !no_pruning;
    o.jobs = jobs;
    o.max_seconds = max_seconds;
    o.witness_limit = witness_limit;
    o.timing = timing;
    return o;
  };

  if (*construct) {
    const auto plane = resolve_plane(ca.plane, ca.q);
    const auto req = request_json(ca, *plane);
    const auto cert = construction_certificate(req, build_from_request(req));
    emit(cert, out_path);
    return cert.at("verified").get<bool>() ? 0 : 1;
  }
  if (*verify) {
    const auto v = verify_certificate(read_json_source(in_path));
    emit(v, out_path);
    return v.at("ok").get<bool>() ? 0 : 1;
  }
  if (*classify) {
    const auto plane = resolve_plane(plane_ref, q);
    const auto j = classification(PointSet(plane, parse_points(points_arg)));
    emit(j, out_path);
    return j.at("is_semiarc").get<bool>() ? 0 : 1;
  }
  if (*search) {
    const auto plane = resolve_plane(plane_ref, q);
    std::optional<SearchCertificate> prior;
    if (!resume_path.empty()) prior = SearchCertificate::from_json(read_json_source(resume_path));
    const auto c = search_long_secant(plane, t, search_opts(), prior ? &*prior : nullptr);
    emit(c.to_json(), out_path);
    return 0;
  }
  if (*census_cmd) {
    const auto plane = resolve_plane(plane_ref, q);
    json certs = json::array();
    json summary = json::array();
    bool complete = true;
    for (const auto& c : census(plane, search_opts(), use_store)) {
      certs.push_back(c.to_json());
      summary.push_back({{"t", c.t}, {"count", c.count}, {"anchored_total", c.anchored_total}, {"complete", c.complete}});
      complete = complete && c.complete;
    }
    emit(sign(json{{"kind", "census"},
                   {"plane", plane->ref()},
                   {"complete", complete},
                   {"summary", summary},
                   {"certificates", certs}}),
         out_path);
    return 0;
  }
  if (*check) {
    TheoremOptions o;
    if (!orders.empty()) o.qs = parse_orders(orders);
    if (!orders.empty() && o.qs.empty()) throw UsageError("no prime powers in '" + orders + "'");
    o.search.jobs = jobs;
    o.use_store = use_store;
    o.seed = seed;
    o.samples = samples;
    const auto r = verify_theorem(theorem_id, o);
    auto j = r.to_json();
    j["options"] = {{"seed", seed}, {"samples", samples}};
    emit(sign(std::move(j)), out_path);
    return r.passed ? 0 : 1;
  }
  if (*equiv) {
    const auto plane = resolve_plane(plane_ref, q);
    const auto j = equivalence(*plane, parse_points(points_arg), parse_points(points_b));
    emit(j, out_path);
    return j.at("equivalent").get<bool>() ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}

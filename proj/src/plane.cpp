#include "semiarc/plane.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "semiarc/errors.hpp"

namespace semiarc {

namespace {

constexpr std::size_t kJoinTableLimit = 1200;

}  // namespace

Triple normalize(const FiniteField& field, Triple x) {
  for (int i = 2; i >= 0; --i) {
    if (x[i] != 0) {
      const Elem s = field.inv(x[i]);
      for (auto& c : x) c = field.mul(c, s);
      return x;
    }
  }
  throw Error(ErrorKind::InvalidPoint, "zero triple is not a projective point");
}

const FiniteField& Plane::field() const {
  if (!field_) throw Error(ErrorKind::UnsupportedPlaneKind, "loaded plane has no coordinates");
  return *field_;
}

std::size_t Plane::coord_index(const Triple& n) const {
  const std::size_t q = q_;
  if (n[2] == 1) return n[0] * q + n[1];
  if (n[1] == 1) return q * q + n[0];
  return q * q + q;
}

PointId Plane::point_index(const Triple& x) const {
  for (Elem c : x) {
    if (c >= q_) throw Error(ErrorKind::InvalidPoint, "coordinate out of range");
  }
  return static_cast<PointId>(coord_index(normalize(field(), x)));
}

LineId Plane::line_index(const Triple& u) const { return point_index(u); }

LineId Plane::join(PointId a, PointId b) const {
  if (!join_.empty()) return join_[static_cast<std::size_t>(a) * size() + b];
  const auto la = lines_through(a);
  const auto lb = lines_through(b);
  std::vector<LineId> common;
  std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(common));
  return common.at(0);
}

PointId Plane::meet(LineId a, LineId b) const {
  if (!meet_.empty()) return meet_[static_cast<std::size_t>(a) * size() + b];
  const auto pa = points_on(a);
  for (PointId p : pa) {
    if (incident(p, b)) return p;
  }
  throw Error(ErrorKind::InvalidPoint, "lines do not meet");
}

void Plane::finish_incidence() {
  const std::size_t v = points_on_.size();
  lines_through_.assign(v, {});
  line_masks_.assign(v, PointMask(v));
  for (LineId l = 0; l < v; ++l) {
    std::sort(points_on_[l].begin(), points_on_[l].end());
    for (PointId p : points_on_[l]) {
      lines_through_[p].push_back(l);
      line_masks_[l].set(p);
    }
  }
  if (v <= kJoinTableLimit) {
    join_.assign(v * v, 0);
    for (LineId l = 0; l < v; ++l) {
      const auto& pts = points_on_[l];
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) join_[pts[i] * v + pts[j]] = l;
      }
    }
    meet_.assign(v * v, 0);
    for (PointId p = 0; p < v; ++p) {
      const auto& ls = lines_through_[p];
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (std::size_t j = 0; j < ls.size(); ++j) meet_[ls[i] * v + ls[j]] = p;
      }
    }
  }
}

PlanePtr build_pg2(const FiniteField& field) {
  auto plane = std::shared_ptr<Plane>(new Plane());
  const unsigned q = field.order();
  const std::size_t v = static_cast<std::size_t>(q) * q + q + 1;
  plane->q_ = q;
  plane->kind_ = PlaneKind::GeneratedDesarguesian;
  plane->ref_ = "pg:" + std::to_string(q);
  plane->field_ = field;
  plane->point_coords_.resize(v);
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) plane->point_coords_[a * q + b] = {a, b, 1};
    plane->point_coords_[q * q + a] = {a, 1, 0};
  }
  plane->point_coords_[v - 1] = {1, 0, 0};
  plane->line_coords_ = plane->point_coords_;
  plane->points_on_.assign(v, {});
  for (LineId l = 0; l < v; ++l) {
    const Triple& u = plane->line_coords_[l];
    for (PointId p = 0; p < v; ++p) {
      const Triple& x = plane->point_coords_[p];
      const Elem s = field.add(field.add(field.mul(u[0], x[0]), field.mul(u[1], x[1])), field.mul(u[2], x[2]));
      if (s == 0) plane->points_on_[l].push_back(p);
    }
  }
  plane->finish_incidence();
  return plane;
}

PlanePtr build_pg2(unsigned q) { return build_pg2(make_field_of_order(q)); }

PlanePtr load_plane(std::istream& in, std::string ref) {
  std::vector<std::vector<long long>> rows;
  long long q = -1;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (q < 0) {
      if (tok != "order" || !(ss >> q) || q < 2) {
        throw Error(ErrorKind::MalformedFile, "line " + std::to_string(lineno) + ": expected `order q`");
      }
      continue;
    }
    std::vector<long long> row;
    do {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw Error(ErrorKind::MalformedFile, "line " + std::to_string(lineno) + ": bad token `" + tok + "`");
      }
      row.push_back(value);
    } while (ss >> tok);
    rows.push_back(std::move(row));
  }
  if (q < 0) throw Error(ErrorKind::MalformedFile, "missing `order q` header");

  const std::size_t v = static_cast<std::size_t>(q * q + q + 1);
  if (rows.size() != v) {
    throw Error(ErrorKind::AxiomViolation, "expected " + std::to_string(v) + " lines, found " + std::to_string(rows.size()));
  }
  auto plane = std::shared_ptr<Plane>(new Plane());
  plane->q_ = static_cast<unsigned>(q);
  plane->kind_ = PlaneKind::Loaded;
  plane->ref_ = std::move(ref);
  plane->points_on_.assign(v, {});
  for (std::size_t l = 0; l < v; ++l) {
    for (long long x : rows[l]) {
      if (x < 0 || static_cast<std::size_t>(x) >= v) {
        throw Error(ErrorKind::MalformedFile, "line " + std::to_string(l) + ": point index " + std::to_string(x) + " out of range");
      }
      plane->points_on_[l].push_back(static_cast<PointId>(x));
    }
    auto& pts = plane->points_on_[l];
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
      throw Error(ErrorKind::AxiomViolation, "line " + std::to_string(l) + " repeats a point");
    }
    if (pts.size() != static_cast<std::size_t>(q + 1)) {
      throw Error(ErrorKind::AxiomViolation, "line " + std::to_string(l) + " has " + std::to_string(pts.size()) +
                                                 " points, expected " + std::to_string(q + 1));
    }
  }
  // Every pair of points on exactly one line; with the counts above this
  // forces the remaining axioms.
  std::vector<std::int64_t> seen(v * v, -1);
  for (std::size_t l = 0; l < v; ++l) {
    const auto& pts = plane->points_on_[l];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        auto& slot = seen[pts[i] * v + pts[j]];
        if (slot >= 0) {
          throw Error(ErrorKind::AxiomViolation, "points " + std::to_string(pts[i]) + " and " + std::to_string(pts[j]) +
                                                     " lie on lines " + std::to_string(slot) + " and " + std::to_string(l));
        }
        slot = static_cast<std::int64_t>(l);
      }
    }
  }
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      if (seen[a * v + b] < 0) {
        throw Error(ErrorKind::AxiomViolation, "points " + std::to_string(a) + " and " + std::to_string(b) + " have no common line");
      }
    }
  }
  plane->finish_incidence();
  return plane;
}

PlanePtr load_plane_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedFile, "cannot open " + path);
  return load_plane(in, "file:" + path);
}

void write_plane(std::ostream& out, const Plane& plane) {
  out << "order " << plane.order() << "\n";
  for (LineId l = 0; l < plane.size(); ++l) {
    const auto pts = plane.points_on(l);
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " " : "") << pts[i];
    out << "\n";
  }
}

PlanePtr plane_from_ref(const std::string& ref) {
  if (ref.rfind("pg:", 0) == 0) {
    std::size_t used = 0;
    unsigned long q = 0;
    try {
      q = std::stoul(ref.substr(3), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != ref.size() - 3) throw Error(ErrorKind::MalformedFile, "bad plane reference `" + ref + "`");
    return build_pg2(static_cast<unsigned>(q));
  }
  if (ref.rfind("file:", 0) == 0) return load_plane_file(ref.substr(5));
  throw Error(ErrorKind::MalformedFile, "plane reference must be pg:<q> or file:<path>, got `" + ref + "`");
}

Subplane subplane_of_degree(const Plane& plane, unsigned d) {
  const FiniteField& f = plane.field();
  if (d == 0 || f.degree() % d != 0) {
    throw Error(ErrorKind::NotASubfield, "GF(p^" + std::to_string(d) + ") is not a subfield of GF(" +
                                             std::to_string(f.order()) + ")");
  }
  Subplane out;
  out.order = 1;
  for (unsigned i = 0; i < d; ++i) out.order *= f.characteristic();
  auto in_sub = [&](const Triple& x) {
    return f.in_subfield(x[0], d) && f.in_subfield(x[1], d) && f.in_subfield(x[2], d);
  };
  for (PointId p = 0; p < plane.size(); ++p) {
    if (in_sub(plane.point_coords(p))) out.points.push_back(p);
  }
  for (LineId l = 0; l < plane.size(); ++l) {
    if (!in_sub(plane.line_coords(l))) continue;
    out.lines.push_back(l);
    std::vector<PointId> pts;
    for (PointId p : plane.points_on(l)) {
      if (std::binary_search(out.points.begin(), out.points.end(), p)) pts.push_back(p);
    }
    out.line_points.push_back(std::move(pts));
  }
  return out;
}

Subplane subplane_embed(const FiniteField& sub, const Plane& plane) {
  if (plane.kind() != PlaneKind::GeneratedDesarguesian) {
    throw Error(ErrorKind::UnsupportedPlaneKind, "subplane embedding needs a generated plane");
  }
  const FiniteField& f = plane.field();
  if (sub.characteristic() != f.characteristic() || f.degree() % sub.degree() != 0) {
    throw Error(ErrorKind::NotASubfield, "GF(" + std::to_string(sub.order()) + ") is not a subfield of GF(" +
                                             std::to_string(f.order()) + ")");
  }
  return subplane_of_degree(plane, sub.degree());
}

bool is_subplane(const Plane& plane, std::span<const PointId> points, unsigned order) {
  const std::size_t expected = static_cast<std::size_t>(order) * order + order + 1;
  PointMask mask(plane.size());
  for (PointId p : points) mask.set(p);
  if (mask.count() != expected || points.size() != expected) return false;
  std::size_t full_lines = 0;
  for (LineId l = 0; l < plane.size(); ++l) {
    const std::size_t k = plane.line_mask(l).intersect_count(mask);
    if (k == order + 1) {
      ++full_lines;
    } else if (k > 1) {
      return false;
    }
  }
  return full_lines == expected;
}

}  // namespace semiarc

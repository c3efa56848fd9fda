#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiarc/perspective.hpp"
#include "semiarc/point_set.hpp"

namespace semiarc {

/// What a family claims about V_t-configurations inside its output.
enum class VClaim { Any, Open, Closed, None, NotOpen };

std::string_view to_string(VClaim c);

struct Construction {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  PointSet set;
  unsigned claimed_t = 0;
  VClaim claimed_type = VClaim::Any;
  /// Constructing lines (l1, l2) when the family has them.
  std::optional<std::pair<LineId, LineId>> lines;
};

struct ConstructionCheck {
  std::optional<unsigned> t;
  bool t_matches = false;
  bool type_matches = false;
  std::size_t open_witnesses = 0;
  std::size_t closed_witnesses = 0;

  bool ok() const { return t_matches && type_matches; }
};

/// classify_semiarc plus detect_vt against the claims.
ConstructionCheck check_construction(const Construction& c);

/// {(c,0,1), (0,-c,1), (c,1,0) : c a nonzero square} plus the base triangle.
/// Throws EvenOrder.
Construction projective_triangle(PlanePtr plane);

/// (l1 △ l2) minus t removed points per line. Throws BadRemovalCount unless
/// 1 <= t <= q-2 and each removal list has t points of l_i \ P.
Construction vt_configuration(PlanePtr plane, LineId l1, LineId l2, unsigned t, std::vector<PointId> removed1,
                              std::vector<PointId> removed2);
/// Same, removing the t least points of each leg.
Construction vt_configuration(PlanePtr plane, LineId l1, LineId l2, unsigned t);

enum class ThmCase { I_i, I_ii, I_iii, II_ii, II_iii };

std::string_view to_string(ThmCase c);
std::optional<ThmCase> thm_case_from_string(std::string_view s);

/**
 * Parameters for the (A,B)-structured families, all on the pinned frame.
 * n, d, h1 describe G(A,B) with B spanned by default_basis(h1) over
 * GF(p^d). For II-ii, d is the degree of the subplane GF(p^d) and n, h1
 * are ignored; for II-iii only n is used.
 */
struct ThmParams {
  unsigned n = 1;
  unsigned d = 1;
  unsigned h1 = 0;
  std::vector<unsigned> orbits;            // I, indices into 1..m
  std::optional<std::vector<PointId>> x;   // explicit X; default is the least valid choice
};

/// Throws CaseConstraintViolated naming the violated rule.
Construction build_thm_case(PlanePtr plane, ThmCase which, const ThmParams& params);

/// A ⊆ GF(q)* with A = -A, |A| >= 2 and at least two elements outside
/// A ∪ {0}. Throws BadASet.
Construction suetake(PlanePtr plane, const std::vector<Elem>& a);

/**
 * Subplane-chain families 1..4. `chain` lists the subfield degrees of
 * Π^0 ⊂ ... ⊂ Π^s = Π_q, so the last entry is r. Z defaults to the least
 * valid choice. Throws ChainNotNested or CaseConstraintViolated.
 */
struct KmParams {
  std::vector<unsigned> chain;
  std::vector<unsigned> subset;            // I ⊆ {1..s}
  std::optional<std::vector<PointId>> z;
};

Construction km_example(PlanePtr plane, unsigned which, const KmParams& params);

/**
 * Conic-based t-semiarcs with t = q - s inside the subplane PG(2,s), s > 3.
 * The conic is {(x, x^2, 1)} ∪ {(0,1,0)} with Q1 = (0,0,1), Q2 = (1,1,1).
 * Throws SubfieldTooSmall or NotASubfield; CaseConstraintViolated when no
 * admissible Z exists.
 */
Construction conic_example(PlanePtr plane, unsigned part, unsigned sub_degree);

enum class QMinus2Kind { Quadrangle, Quadrilateral, Fano };

std::optional<QMinus2Kind> qm2_kind_from_string(std::string_view s);

/// Works on loaded planes too. Throws NoFanoSubplane.
Construction q_minus_2_family(PlanePtr plane, QMinus2Kind kind);

/// Least Fano subplane found by closing every quadrangle, if any.
std::optional<std::vector<PointId>> find_fano_subplane(const Plane& plane);

}  // namespace semiarc

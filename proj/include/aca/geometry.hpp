#ifndef ACA_GEOMETRY_HPP
#define ACA_GEOMETRY_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "aca/groebner.hpp"

namespace aca {

using Point = std::vector<FieldElement>;

int compare_points(const Point& a, const Point& b);
inline bool point_less(const Point& a, const Point& b) { return compare_points(a, b) < 0; }
std::string point_to_string(const Point& p);

// Zero locus of finitely many polynomials in K^m.
class AlgebraicSet {
 public:
  AlgebraicSet() = default;
  AlgebraicSet(FieldRef field, RosterRef roster, std::vector<MultiPoly> gens);
  static AlgebraicSet full(FieldRef field, int ambient);

  int ambient() const { return static_cast<int>(roster_->size()); }
  const FieldRef& field() const { return field_; }
  const RosterRef& roster() const { return roster_; }
  const std::vector<MultiPoly>& gens() const { return gens_; }
  bool is_null() const { return !field_; }

  bool contains(const Point& p) const;
  IdealBasis ideal() const { return IdealBasis::make(field_, roster_, gens_); }
  // Reduced Groebner basis under grevlex, computed once and cached.
  const IdealBasis& groebner(Budget* budget = nullptr) const;
  // Emptiness over the algebraic closure: 1 lies in the ideal.
  bool empty_over_closure(Budget* budget = nullptr) const;
  bool ideal_equal_to(const AlgebraicSet& o, Budget* budget = nullptr) const;
  bool same_ambient(const AlgebraicSet& o) const;

  std::string to_text() const;

 private:
  FieldRef field_;
  RosterRef roster_;
  std::vector<MultiPoly> gens_;
  struct GbCache {
    std::mutex mu;
    std::optional<IdealBasis> gb;
  };
  std::shared_ptr<GbCache> cache_;
};

// zero_set per the artifact interface: generators in m variables t1..tm.
AlgebraicSet zero_set(std::vector<MultiPoly> gens, int ambient, const FieldRef& field);

// {a : all generators of `closed` vanish, neq(a) != 0}. neq == 1 encodes a
// closed piece.
struct LocallyClosedPiece {
  AlgebraicSet closed;
  MultiPoly neq;
  bool contains(const Point& p) const;
};

// Finite union of locally closed pieces.
class ConstructibleSet {
 public:
  ConstructibleSet() = default;
  ConstructibleSet(FieldRef field, RosterRef roster, std::vector<LocallyClosedPiece> pieces);
  static ConstructibleSet empty(FieldRef field, RosterRef roster);
  static ConstructibleSet from_closed(const AlgebraicSet& a);
  static ConstructibleSet piece(const AlgebraicSet& closed, const MultiPoly& neq);

  const FieldRef& field() const { return field_; }
  const RosterRef& roster() const { return roster_; }
  int ambient() const { return static_cast<int>(roster_->size()); }
  const std::vector<LocallyClosedPiece>& pieces() const { return pieces_; }
  bool is_null() const { return !field_; }

  bool contains(const Point& p) const;
  std::string to_text() const;

 private:
  FieldRef field_;
  RosterRef roster_;
  std::vector<LocallyClosedPiece> pieces_;
};

ConstructibleSet cs_union(const ConstructibleSet& a, const ConstructibleSet& b);
ConstructibleSet cs_intersect(const ConstructibleSet& a, const ConstructibleSet& b);
ConstructibleSet cs_complement(const ConstructibleSet& a);
// Zariski closure, piecewise via saturation (I : Q^inf).
AlgebraicSet cs_closure(const ConstructibleSet& a, Budget* budget = nullptr);

// An open dense subset U of closure(C) with U contained in C: each piece minus
// the closures of the other pieces' boundaries. Errors on empty input.
ConstructibleSet open_dense_core(const ConstructibleSet& c, Budget* budget = nullptr);

// Restriction of a polynomial map to `source`, landing in `target`.
// Containment is checked on construction: exactly over finite fields (point
// enumeration), sufficiently over Q (each target generator composed with the
// map reduces to zero modulo the source ideal). A failed symbolic check only
// clears `verified`.
struct RegularMap {
  AlgebraicSet source;
  AlgebraicSet target;
  std::vector<MultiPoly> components;  // over source roster
  bool verified = true;

  static RegularMap make(AlgebraicSet source, AlgebraicSet target, std::vector<MultiPoly> components,
                         Budget* budget = nullptr);
  // Skips the containment check; for maps correct by construction
  // (projections, rewirings, verified compositions).
  static RegularMap make_unchecked(AlgebraicSet source, AlgebraicSet target,
                                   std::vector<MultiPoly> components, bool verified = true);
  static RegularMap identity(const AlgebraicSet& a);

  Point eval(const Point& p) const;
  std::string to_text() const;
};

RegularMap map_compose(const RegularMap& g, const RegularMap& f);

// Zariski closure of f(source): eliminate the source variables from the graph
// ideal (source ideal + (target_j - P_j)).
AlgebraicSet image_closure(const RegularMap& f, Budget* budget = nullptr);

// Generators of the vanishing ideal of a finite point set (Buchberger-Moller
// under grevlex; the output is the reduced Groebner basis).
IdealBasis vanishing_ideal_of_points(const std::vector<Point>& points, int ambient,
                                     const FieldRef& field, Budget* budget = nullptr);

// The unique polynomial in the staircase span taking the given values on the
// given (distinct) points.
MultiPoly interpolate_on_points(const std::vector<Point>& points,
                                const std::vector<FieldElement>& values, int ambient,
                                const FieldRef& field, Budget* budget = nullptr);

}  // namespace aca

#endif

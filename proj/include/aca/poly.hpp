#ifndef ACA_POLY_HPP
#define ACA_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aca/field.hpp"

namespace aca {

// Ordered variable roster. Always sorted under natural name order, so the
// roster is determined by the set of names and positions are reproducible.
class VarRoster {
 public:
  static std::shared_ptr<const VarRoster> make(std::vector<std::string> names);
  // t1..tm
  static std::shared_ptr<const VarRoster> canonical(int m, const std::string& stem = "t");

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& n) const;  // -1 when absent
  bool operator==(const VarRoster& o) const { return names_ == o.names_; }

 private:
  explicit VarRoster(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

using RosterRef = std::shared_ptr<const VarRoster>;

enum class OrderKind { Lex, GrevLex };

// Monomial order: lex or graded reverse lex over a permutation of the roster.
// perm[i] is the roster index of the i-th most significant variable; an empty
// perm means roster order.
struct MonomialOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::vector<int> perm;

  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
  static MonomialOrder grevlex() { return {OrderKind::GrevLex, {}}; }
  static MonomialOrder lex_with(std::vector<int> perm) { return {OrderKind::Lex, std::move(perm)}; }

  // -1, 0, 1 for a < b, a == b, a > b
  int compare(const std::vector<int>& a, const std::vector<int>& b) const;
  bool operator==(const MonomialOrder& o) const { return kind == o.kind && perm == o.perm; }
  std::string to_string() const;
};

struct Term {
  std::vector<int> exps;
  FieldElement coeff;
};

// Sparse multivariate polynomial in canonical form: terms strictly descending
// under the stored order, no zero coefficients. Equality is structural.
class MultiPoly {
 public:
  MultiPoly() = default;

  static MultiPoly zero(FieldRef field, RosterRef roster, MonomialOrder order = MonomialOrder::grevlex());
  static MultiPoly constant(FieldRef field, RosterRef roster, FieldElement c,
                            MonomialOrder order = MonomialOrder::grevlex());
  static MultiPoly constant(FieldRef field, RosterRef roster, long long c,
                            MonomialOrder order = MonomialOrder::grevlex());
  static MultiPoly variable(FieldRef field, RosterRef roster, std::size_t index,
                            MonomialOrder order = MonomialOrder::grevlex());
  static MultiPoly from_terms(FieldRef field, RosterRef roster, std::vector<Term> terms,
                              MonomialOrder order = MonomialOrder::grevlex());

  const FieldRef& field() const { return field_; }
  const RosterRef& roster() const { return roster_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_null() const { return !field_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The constant value (0 if zero polynomial); error when non-constant.
  FieldElement constant_value() const;

  const Term& leading_term() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;
  std::vector<bool> vars_used() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const FieldElement& c) const;
  MultiPoly monic() const;
  MultiPoly pow(int e) const;

  bool operator==(const MultiPoly& o) const;  // same field, roster, and terms
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Exact evaluation; point indexed by roster position.
  FieldElement eval(const std::vector<FieldElement>& point) const;

  // Replace every variable by its image; images are indexed by roster
  // position and must all share one roster and field.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;

  // Same polynomial re-sorted under another order.
  MultiPoly with_order(const MonomialOrder& order) const;
  // Transport onto another roster: var_map[i] gives the new index of old
  // variable i, or -1 if the variable must not occur.
  MultiPoly transported(const RosterRef& roster, const std::vector<int>& var_map,
                        std::optional<MonomialOrder> order = std::nullopt) const;
  // Convenience: embed into a superset roster (matched by name).
  MultiPoly embedded(const RosterRef& roster) const;

  std::string to_string(bool clear_denominators = false) const;

 private:
  FieldRef field_;
  RosterRef roster_;
  MonomialOrder order_;
  std::vector<Term> terms_;

  void normalize();
};

// Unique representative with all exponents < q defining the same function
// F_q^m -> F_q (reduction by the field equations t^q - t). Finite fields only.
MultiPoly functional_normal_form(const MultiPoly& f);

// Parse a polynomial over `field` with a fixed roster. Unknown variables are
// an error. `w` denotes the generator in extension fields.
MultiPoly parse_poly(const std::string& text, const FieldRef& field, const RosterRef& roster,
                     std::size_t at_line = 1);
// Roster inferred from the variables that occur, sorted under natural order.
MultiPoly parse_poly_auto(const std::string& text, const FieldRef& field, std::size_t at_line = 1);
// A constant expression (no variables beyond w); used for scalar literals.
FieldElement parse_scalar(const std::string& text, const FieldRef& field, std::size_t at_line = 1);

}  // namespace aca

#endif

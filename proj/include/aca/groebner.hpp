#ifndef ACA_GROEBNER_HPP
#define ACA_GROEBNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "aca/poly.hpp"

namespace aca {

// Generating set of an ideal of K[roster]. When `is_reduced_gb` is set the
// generators form the reduced Groebner basis under `gb_order`: monic, no term
// of any generator divisible by another generator's leading monomial.
struct IdealBasis {
  FieldRef field;
  RosterRef roster;
  std::vector<MultiPoly> gens;
  bool is_reduced_gb = false;
  MonomialOrder gb_order;

  static IdealBasis make(FieldRef field, RosterRef roster, std::vector<MultiPoly> gens);
};

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);

// Full normal form of f against the list G under `order` (deterministic:
// divisors tried in list order). G need not be a Groebner basis.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& G,
                      const MonomialOrder& order, Budget* budget = nullptr);

// Buchberger with product + chain criteria and a step budget. Deterministic
// reduced output for fixed input and order.
IdealBasis groebner_basis(const IdealBasis& gens, const MonomialOrder& order,
                          Budget* budget = nullptr);

// Unique normal form against a flagged reduced Groebner basis; 0 iff f lies
// in the ideal. Rejects unflagged bases.
MultiPoly reduce_mod(const MultiPoly& f, const IdealBasis& gb, Budget* budget = nullptr);

// Generators of I ∩ K[keep] via a lex order listing the eliminated variables
// first. The result lives on the roster of `keep` names.
IdealBasis elimination(const IdealBasis& gens, const std::vector<std::string>& keep,
                       Budget* budget = nullptr);

IdealBasis ideal_intersect(const IdealBasis& a, const IdealBasis& b, Budget* budget = nullptr);

// Saturation (I : Q^inf), computed by eliminating y from I + (1 - y*Q).
IdealBasis ideal_saturate(const IdealBasis& ideal, const MultiPoly& q, Budget* budget = nullptr);

// Whether the ideal is the unit ideal (empty zero locus over the algebraic
// closure). Computes a Groebner basis when the input is not flagged.
bool contains_one(const IdealBasis& basis, Budget* budget = nullptr);

// Ideal equality by mutual reduction to zero.
bool ideal_equal(const IdealBasis& a, const IdealBasis& b, Budget* budget = nullptr);

// The input basis with its reduced Groebner basis computed (cached form used
// by callers that reduce repeatedly).
IdealBasis as_reduced_gb(const IdealBasis& basis, Budget* budget = nullptr);

}  // namespace aca

#endif

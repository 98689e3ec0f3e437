#ifndef ACA_AUTOMATA_HPP
#define ACA_AUTOMATA_HPP

#include <optional>
#include <string>
#include <vector>

#include "aca/enumerate.hpp"
#include "aca/geometry.hpp"
#include "aca/lattice.hpp"

namespace aca {

// Naming convention for rule variables: coordinate j (1-based) of the cell at
// c is "x[c][j]". Natural name order then sorts blocks by window order, so
// roster position = cell_index * m + (j - 1).
std::string block_var_name(const Cell& cell, int coord);
RosterRef block_roster(const Window& w, int m);

// |w|-fold product of the alphabet on the block roster: one copy of the
// defining equations per cell, on disjoint variable blocks.
AlgebraicSet product_set(const AlgebraicSet& alphabet, const Window& w);

// Finite-window configuration: a point of the alphabet at every cell of the
// support. Values are validated against the alphabet's equations.
class Pattern {
 public:
  Pattern() = default;
  Pattern(AlgebraicSet alphabet, Window support, std::vector<Point> values);

  const AlgebraicSet& alphabet() const { return alphabet_; }
  const Window& support() const { return support_; }
  const std::vector<Point>& values() const { return values_; }
  const Point& value_at(const Cell& c) const;

  Pattern translated(const Cell& g) const;
  Pattern restricted(const Window& w) const;
  bool operator==(const Pattern& o) const;

  std::string to_text() const;  // one "cell : value-tuple" line per cell
  static Pattern parse(const std::string& text, const AlgebraicSet& alphabet, int dim);

 private:
  AlgebraicSet alphabet_;
  Window support_;
  std::vector<Point> values_;
};

// Flatten/unflatten between patterns on w and points of product_set(A, w).
Point product_point_from_pattern(const Pattern& p);
Pattern pattern_from_product_point(const AlgebraicSet& alphabet, const Window& w, const Point& big);

// Algebraic cellular automaton on Z^d: alphabet A in K^m, finite memory
// window M, regular local rule A^M -> A.
class CellularAutomaton {
 public:
  CellularAutomaton() = default;

  int dim() const { return memory_.dim(); }
  int alphabet_ambient() const { return alphabet_.ambient(); }
  const FieldRef& field() const { return alphabet_.field(); }
  const AlgebraicSet& alphabet() const { return alphabet_; }
  const Window& memory() const { return memory_; }
  const RegularMap& rule() const { return rule_; }
  bool verified() const { return rule_.verified; }

  static CellularAutomaton make_unchecked(AlgebraicSet alphabet, Window memory,
                                          std::vector<MultiPoly> rule_polys, bool verified = true);

 private:
  AlgebraicSet alphabet_;
  Window memory_;
  RegularMap rule_;
};

// Validated construction. Finite fields: every A^M point must map into A.
// Over Q a sufficient symbolic check runs; failure only marks the automaton
// unverified.
CellularAutomaton ca_make(const AlgebraicSet& alphabet, const Window& memory,
                          std::vector<MultiPoly> rule_polys, Budget* budget = nullptr);

// One application of the local rule; the output lives on interior(E, M).
Pattern ca_apply(const CellularAutomaton& ca, const Pattern& p);

// The finite truncation A^E -> A^interior(E,M) as a regular map, wired from
// the rule polynomials. Agrees pointwise with ca_apply.
RegularMap ca_truncation(const CellularAutomaton& ca, const Window& e);

// sigma after tau; memory is the sumset, rule is the substituted composite.
CellularAutomaton ca_compose(const CellularAutomaton& sigma, const CellularAutomaton& tau);

struct MinimalMemoryResult {
  Window minimal_memory;
  CellularAutomaton automaton;  // same function, memory reduced to the minimum
};

// Minimal memory set. Over finite fields dependence is read off the
// functional normal form; over Q off the canonical polynomial.
MinimalMemoryResult ca_minimal_memory(const CellularAutomaton& ca);

// Exhaustive dependence oracle (finite fields): does the rule output change
// when only the given memory cell's block changes?
bool ca_depends_on_cell(const CellularAutomaton& ca, const Cell& cell, Budget* budget = nullptr);

enum class GroupChange { Restrict, Induce };

// Restriction to a sublattice containing the memory set (memory re-expressed
// in H-coordinates) or induction along the basis embedding. The rule
// polynomials transport verbatim; only the block labels change.
CellularAutomaton ca_change_group(const CellularAutomaton& ca, const Sublattice& h, GroupChange dir);

// The conjugated self-map of A^{H\G} on a finite-index sublattice: component
// at coset r is the rule read through g -> rep(r + g).
RegularMap ca_periodic_map(const CellularAutomaton& ca, const Sublattice& h);

// H-periodic configuration given by its values on coset representatives.
struct PeriodicConfiguration {
  AlgebraicSet alphabet;
  CosetData cosets;
  std::vector<Point> values;  // one per representative

  const Point& value_at(const Cell& g) const { return values[cosets.project(g)]; }
  Pattern pattern_on(const Window& w) const;
  std::string to_text() const;
};

PeriodicConfiguration periodic_from_product_point(const CellularAutomaton& ca, const Sublattice& h,
                                                  const Point& big);

struct SurjunctivityEntry {
  Sublattice lattice;
  InjectivityReport report;
  // explicit counterexample when the conjugated map is not injective
  std::optional<std::pair<PeriodicConfiguration, PeriodicConfiguration>> collision;
};

struct SurjunctivityReport {
  std::vector<SurjunctivityEntry> entries;
  bool injective_everywhere = true;
  bool surjective_everywhere = true;
  std::string verdict;
};

// For each finite-index sublattice, conjugate to a regular self-map of
// A^{H\G} and run the injectivity tower. A non-injective level certifies the
// automaton itself non-injective (periodic colliding pair).
SurjunctivityReport surjunctivity_check(const CellularAutomaton& ca,
                                        const std::vector<Sublattice>& lattices, int tower_max_k,
                                        Budget* budget = nullptr);

}  // namespace aca

#endif

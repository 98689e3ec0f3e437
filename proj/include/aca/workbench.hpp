#ifndef ACA_WORKBENCH_HPP
#define ACA_WORKBENCH_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aca/projlim.hpp"

namespace aca {

// Parsed .aca automaton spec. Polynomial and generator texts are kept in
// canonical form, so print -> parse -> print is the identity.
struct AutomatonSpec {
  std::string name;
  std::string notes;
  FieldRef field;
  int group_dim = 1;
  int alphabet_ambient = 1;
  std::vector<std::string> alphabet_gens;
  std::vector<Cell> memory;
  std::vector<std::string> rule_polys;

  static AutomatonSpec parse(const std::string& text);
  static AutomatonSpec from_automaton(const CellularAutomaton& ca, const std::string& name);
  std::string print() const;
  AlgebraicSet build_alphabet() const;
  CellularAutomaton build(Budget* budget = nullptr) const;
};

struct CatalogEntry {
  AutomatonSpec spec;
  std::optional<AutomatonSpec> inverse;  // closed-form inverse where the construction has one
  std::string description;
};

// Named constructions: shift, affine, pointwise, sl2-difference, triangular,
// real-quadratic, frobenius. Parameters are name=value pairs.
CatalogEntry example_catalog(const std::string& name,
                             const std::map<std::string, std::string>& params);

// Command-line entry point. Returns the process exit code:
//   0 success, 1 usage error, 2 mathematical obstruction (with certificate),
//   3 work-budget exhaustion.
int run_command(const std::vector<std::string>& argv, std::ostream& out);

}  // namespace aca

#endif

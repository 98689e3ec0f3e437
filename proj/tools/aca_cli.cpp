#include <iostream>
#include <string>
#include <vector>

#include "aca/workbench.hpp"

namespace {

const char* kUsage = R"(aca - exact-arithmetic workbench for algebraic cellular automata

usage: aca <subcommand> [options]

subcommands:
  eval           apply an automaton to a pattern       --spec F --pattern P
  compose        compose two automata (first o second) --spec F --with G
  minmem         minimal memory set                    --spec F
  restrict       restrict to a sublattice              --spec F --lattice L
  induce         induce along a sublattice basis       --spec F --lattice L
  periodic       conjugated map on A^{H\G}             --spec F --lattice L
  surjunctivity  injective => surjective evidence      --spec F --lattices "1 2 3" [--tower K]
  image          image closure of a truncation         --spec F [--depth N]
  invert         reversibility search                  --spec F [--depth N]
  closedimage    preimage search on exhausting boxes   --spec F (--target-constant V | --target P) [--depth N]
  mlcheck        projective-limit demos                [--demo constant|squaring|shrinking] [--field Q|p|p^k] [--depth N]
  thresholds     backward-solvability thresholds       [--k N]
  example        named catalog constructions           --name N [name=value flags]
  selftest       run the built-in oracle suite         [--seed S]

common options:
  --budget STEPS   work budget (default large); exhaustion exits with code 3
  --out FILE       write the report to a file instead of stdout
  --timing         append elapsed_ms to the report
  --seed S         seed for randomized test patterns (selftest only)

exit codes: 0 success, 1 usage error, 2 mathematical obstruction
(certificate in the report), 3 budget exhausted.

lattices are written as row lists "a,b;c,d" (or a bare integer n for n*Z^d);
patterns as lines "cell : v1,v2"; fields as Q, p, or p^k[:c0,...,ck].
)";

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    std::cout << kUsage;
    return args.empty() ? 1 : 0;
  }
  return aca::run_command(args, std::cout);
}

#ifndef ACA_PROJLIM_HPP
#define ACA_PROJLIM_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "aca/automata.hpp"

namespace aca {

struct SequenceLevel {
  AlgebraicSet ambient;
  ConstructibleSet set;  // X_n inside the ambient
};

// Projective sequence of constructible sets: levels X_n in ambient A_n with
// regular transitions g_n: A_{n+1} -> A_n carrying X_{n+1} into X_n. Levels
// materialize lazily; over finite fields the containment g_n(X_{n+1}) ⊆ X_n
// is checked by enumeration at materialization (unless the construction
// guarantees it and the check is waived).
class ProjectiveSequence {
 public:
  ProjectiveSequence(std::function<SequenceLevel(int)> level_fn,
                     std::function<RegularMap(int)> transition_fn, bool check_containment = true);
  static ProjectiveSequence from_levels(std::vector<SequenceLevel> levels,
                                        std::vector<RegularMap> transitions,
                                        bool check_containment = true);

  const SequenceLevel& level(int n, Budget* budget = nullptr) const;
  // g_n : A_{n+1} -> A_n
  const RegularMap& transition(int n, Budget* budget = nullptr) const;
  // f_{nm} : A_m -> A_n (m >= n), the staged composite of transitions
  RegularMap composite(int n, int m, Budget* budget = nullptr) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Compatible depth-indexed thread (x_0, ..., x_N) with x_n = g_n(x_{n+1}).
using LimitThread = std::vector<Point>;

struct UniversalPointsResult {
  std::vector<Point> points;  // ∩_{m <= horizon} f_{nm}(X_m), exactly
  bool stabilized = false;    // two successive intersections coincided
  std::vector<std::size_t> stage_sizes;
};

// Point-set universal elements at level n (finite fields).
UniversalPointsResult universal_points(const ProjectiveSequence& seq, int n, int horizon,
                                       Budget* budget = nullptr);

struct UniversalClosureResult {
  std::vector<AlgebraicSet> chain;  // Zariski closures of f_{nm}(X_m), m = n..horizon
  bool stabilized = false;          // certified by ideal equality
  int stabilized_at = -1;
};

// Symbolic mode over Q: the descending chain of image closures.
UniversalClosureResult universal_closure_chain(const ProjectiveSequence& seq, int n, int horizon,
                                               Budget* budget = nullptr);

struct MlLiftResult {
  bool ok = false;
  LimitThread thread;          // length depth+1 on success
  int obstruction_level = -1;  // first level with an empty set otherwise
  std::vector<std::size_t> universal_sizes;
};

// Mittag-Leffler lifting over a finite field: lexicographically least
// compatible preimages through the universal sets. An empty level is reported
// as a genuine obstruction certificate.
MlLiftResult ml_lift(const ProjectiveSequence& seq, int depth, Budget* budget = nullptr);

// Point-set constructible: one single-point closed piece per point.
ConstructibleSet points_to_constructible(const std::vector<Point>& points, int ambient,
                                         const FieldRef& field);

struct ClosedImageResult {
  enum class Status { PreimageFound, EmptyFiber, SymbolicEvidence };
  Status status;
  std::optional<Pattern> preimage;  // on the depth window; tau(preimage) matches the target
  Window matched_window;            // F_depth on success
  int obstruction_level = -1;       // first n with an empty fiber
  // symbolic mode (infinite fields):
  std::vector<bool> level_consistent;       // fiber ideal != (1), per level
  std::vector<AlgebraicSet> closure_chain;  // universal closure chain at level 0
  bool chain_stabilized = false;
  std::string note;
};

// Search for a preimage of the target on exhausting boxes: fibers
// X_n = tau_n^{-1}(y|F_n) form a projective sequence under restriction; a
// lifted thread yields a pattern whose image matches y on F_depth. Finite
// fields decide exactly; over Q only closure-chain evidence is emitted.
ClosedImageResult closed_image_search(const CellularAutomaton& ca,
                                      const std::function<Point(const Cell&)>& target, int depth,
                                      Budget* budget = nullptr);

// The pair set {(u,v) : tau_n(u) = tau_n(v), u(0) != v(0)} inside
// A^{E_n} x A^{E_n}, as a constructible set (m special-open pieces).
ConstructibleSet reversibility_pair_set(const CellularAutomaton& ca, int n,
                                        Budget* budget = nullptr);

struct ReversibilityResult {
  enum class Status { InverseFound, WitnessPair, Inconclusive };
  Status status;
  std::optional<CellularAutomaton> inverse;
  int concluded_level = -1;  // n at which the pair set was certified empty
  bool roundtrip_verified = false;
  // non-injectivity evidence:
  std::optional<std::pair<Pattern, Pattern>> witness;  // equal image, different center
  int witness_level = -1;
  std::optional<std::pair<PeriodicConfiguration, PeriodicConfiguration>> periodic_witness;
  std::string diagnostics;
};

// Reversibility search on exhausting boxes. An empty pair set at level n
// means the center of any preimage is determined by the image on F_n; the
// inverse rule is then extracted (symbolically where the graph system solves
// by linear elimination, otherwise by exhaustive-table interpolation) and
// returned with memory window F_n, minimized. Surviving pairs are returned as
// witnesses; a periodic colliding pair upgrades them to an exact
// non-injectivity certificate.
ReversibilityResult reversibility_search(const CellularAutomaton& ca, int depth_max,
                                         Budget* budget = nullptr);

// b_1 = 1, b_{k+1} = 1 + b_k^2: the exact feasibility thresholds for backward
// solvability of x(n+1) = 1 + x(n)^2 over the reals. Their divergence is the
// closed-image failure of the real quadratic automaton.
std::vector<mpq_class> real_counterexample_thresholds(int kmax);

// Forward-recursive preimage witness x(n+1) = y(n) + x(n)^2 with x(m) = seed,
// for a target y on the contiguous 1-D window [m, m+L).
Pattern window_preimage_chain(const Pattern& y, const FieldElement& seed);

}  // namespace aca

#endif

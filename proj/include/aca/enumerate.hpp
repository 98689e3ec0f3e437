#ifndef ACA_ENUMERATE_HPP
#define ACA_ENUMERATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "aca/geometry.hpp"

namespace aca {

// Brute-force finite-field point oracles. The unsuffixed entry points run the
// OpenMP kernels (with a packed fast path for prime fields); the _serial
// variants are the straightforward reference implementations kept for testing
// and benchmarking. Outputs are identical: sorted, schedule-independent.

// q^ambient with an overflow/budget guard.
unsigned long long point_count(const FieldRef& field, int ambient, Budget* budget = nullptr);

// Index <-> point bijection; index order is lexicographic point order with
// coordinate 0 most significant.
Point point_from_index(const FieldRef& field, int ambient, unsigned long long idx);
unsigned long long point_to_index(const Point& p);

std::vector<Point> enumerate_points(const AlgebraicSet& a, Budget* budget = nullptr);
std::vector<Point> enumerate_points_serial(const AlgebraicSet& a, Budget* budget = nullptr);
std::vector<Point> enumerate_points(const ConstructibleSet& c, Budget* budget = nullptr);
std::vector<Point> enumerate_points_serial(const ConstructibleSet& c, Budget* budget = nullptr);

// Sorted exact image f(source) over a finite field (the Chevalley oracle).
std::vector<Point> image_points(const RegularMap& f, Budget* budget = nullptr);
std::vector<Point> image_points_serial(const RegularMap& f, Budget* budget = nullptr);

struct Collision {
  Point a;
  Point b;
  Point image;
};

// The least source collision of f (pair of distinct source points with equal
// image), or nullopt when f is injective on source points.
std::optional<Collision> find_collision(const RegularMap& f, Budget* budget = nullptr);

struct InjectivityLevel {
  int k = 1;
  unsigned long long q = 0;
  unsigned long long source_count = 0;
  unsigned long long image_count = 0;
  bool injective = false;
  bool surjective = false;
  std::optional<Collision> collision;
};

struct InjectivityReport {
  std::vector<InjectivityLevel> levels;
  bool injective_all_levels = true;
  bool surjective_all_levels = true;
  std::string verdict;
};

// Injectivity/surjectivity of a self-map on the F_{p^k}-points of its source
// for k = 1..tower_max_k. On each finite level injective <=> surjective by
// pigeonhole; the content is consistency across the tower.
InjectivityReport injectivity_report(const RegularMap& f, int tower_max_k, Budget* budget = nullptr);

// Coefficient-wise embedding of prime-field data into an extension of the
// same characteristic.
MultiPoly lift_poly(const MultiPoly& f, const FieldRef& ext);
AlgebraicSet lift_set(const AlgebraicSet& a, const FieldRef& ext);
RegularMap lift_map(const RegularMap& f, const FieldRef& ext);

}  // namespace aca

#endif

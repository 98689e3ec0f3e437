#ifndef ACA_LATTICE_HPP
#define ACA_LATTICE_HPP

#include <string>
#include <vector>

#include "aca/common.hpp"

namespace aca {

// Group element of Z^d.
using Cell = std::vector<long long>;

int cell_compare(const Cell& a, const Cell& b);
inline bool cell_less(const Cell& a, const Cell& b) { return cell_compare(a, b) < 0; }
Cell cell_add(const Cell& a, const Cell& b);
Cell cell_sub(const Cell& a, const Cell& b);
Cell cell_neg(const Cell& a);
std::string cell_to_string(const Cell& c);
Cell parse_cell(const std::string& text, std::size_t at_line = 1);

// Finite duplicate-free subset of Z^d, sorted lexicographically.
class Window {
 public:
  Window() = default;
  Window(int dim, std::vector<Cell> cells);
  static Window empty(int dim) { return Window(dim, {}); }
  static Window box(const Cell& lo, const Cell& hi);  // inclusive corners

  int dim() const { return dim_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  int index_of(const Cell& c) const;  // -1 if absent
  bool contains(const Cell& c) const { return index_of(c) >= 0; }
  bool subset_of(const Window& o) const;

  Window translated(const Cell& g) const;
  Window negated() const;
  Window united(const Window& o) const;
  Window sumset(const Window& o) const;

  bool operator==(const Window& o) const { return dim_ == o.dim_ && cells_ == o.cells_; }
  std::string to_string() const;

 private:
  int dim_ = 0;
  std::vector<Cell> cells_;
};

// {g : g + m in E for all m in M}. The window an image pattern lives on.
Window interior(const Window& e, const Window& m);

// Bounding box of M united with the origin, inflated by n in every direction;
// the canonical exhausting window sequence.
Window exhaustion_box(const Window& m, int n);

// Sublattice of Z^d spanned by `rank` basis rows, held in Hermite normal
// form: row-echelon with positive pivots and entries above each pivot reduced
// into [0, pivot).
class Sublattice {
 public:
  Sublattice() = default;
  // rows are generators; may be redundant or unordered.
  Sublattice(int dim, std::vector<Cell> rows);
  static Sublattice scaled(int dim, long long n);  // n Z^d
  static Sublattice diagonal(const Cell& diag);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(hnf_.size()); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<Cell>& basis() const { return hnf_; }
  // |det| for full-rank lattices.
  unsigned long long index() const;

  bool contains(const Cell& g) const;
  // Integer coordinates of g in the basis; error when g is outside.
  Cell coordinates(const Cell& g) const;
  // Basis combination: coords -> Z^d.
  Cell embed(const Cell& coords) const;
  // Canonical coset representative of g in H\Z^d (full rank only).
  Cell coset_rep(const Cell& g) const;

  bool operator==(const Sublattice& o) const { return dim_ == o.dim_ && hnf_ == o.hnf_; }
  std::string to_string() const;
  static Sublattice parse(const std::string& text, int dim, std::size_t at_line = 1);

 private:
  int dim_ = 0;
  std::vector<Cell> hnf_;
};

// Enumerated transversal of H\Z^d with a projection to representative index.
struct CosetData {
  Window representatives;
  Sublattice lattice;
  int project(const Cell& g) const;  // index into representatives
};

CosetData coset_data(const Sublattice& h);

}  // namespace aca

#endif

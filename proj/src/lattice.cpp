#include "aca/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace aca {

int cell_compare(const Cell& a, const Cell& b) {
  if (a.size() != b.size()) throw DomainError("cell dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

Cell cell_add(const Cell& a, const Cell& b) {
  Cell r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Cell cell_sub(const Cell& a, const Cell& b) {
  Cell r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Cell cell_neg(const Cell& a) {
  Cell r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

std::string cell_to_string(const Cell& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s;
}

Cell parse_cell(const std::string& text, std::size_t at_line) {
  Cell c;
  std::string cur;
  auto flush = [&](std::size_t col) {
    std::string t;
    for (char ch : cur)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw ParseError("empty cell coordinate", at_line, col);
    try {
      c.push_back(std::stoll(t));
    } catch (const std::exception&) {
      throw ParseError("bad cell coordinate '" + t + "'", at_line, col);
    }
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ',')
      flush(i + 1);
    else
      cur += text[i];
  }
  flush(text.size());
  return c;
}

Window::Window(int dim, std::vector<Cell> cells) : dim_(dim), cells_(std::move(cells)) {
  for (const auto& c : cells_)
    if (static_cast<int>(c.size()) != dim_) throw DomainError("cell dimension mismatch in window");
  std::sort(cells_.begin(), cells_.end(), cell_less);
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

Window Window::box(const Cell& lo, const Cell& hi) {
  int d = static_cast<int>(lo.size());
  for (int i = 0; i < d; ++i)
    if (lo[i] > hi[i]) throw DomainError("box corners out of order");
  std::vector<Cell> cells;
  Cell cur = lo;
  while (true) {
    cells.push_back(cur);
    int i = d - 1;
    while (i >= 0) {
      if (++cur[i] <= hi[i]) break;
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return Window(d, std::move(cells));
}

int Window::index_of(const Cell& c) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c, cell_less);
  if (it != cells_.end() && *it == c) return static_cast<int>(it - cells_.begin());
  return -1;
}

bool Window::subset_of(const Window& o) const {
  for (const auto& c : cells_)
    if (!o.contains(c)) return false;
  return true;
}

Window Window::translated(const Cell& g) const {
  std::vector<Cell> cells;
  cells.reserve(cells_.size());
  for (const auto& c : cells_) cells.push_back(cell_add(c, g));
  return Window(dim_, std::move(cells));
}

Window Window::negated() const {
  std::vector<Cell> cells;
  cells.reserve(cells_.size());
  for (const auto& c : cells_) cells.push_back(cell_neg(c));
  return Window(dim_, std::move(cells));
}

Window Window::united(const Window& o) const {
  if (dim_ != o.dim_) throw DomainError("window dimension mismatch");
  std::vector<Cell> cells = cells_;
  cells.insert(cells.end(), o.cells_.begin(), o.cells_.end());
  return Window(dim_, std::move(cells));
}

Window Window::sumset(const Window& o) const {
  if (dim_ != o.dim_) throw DomainError("window dimension mismatch");
  std::vector<Cell> cells;
  for (const auto& a : cells_)
    for (const auto& b : o.cells_) cells.push_back(cell_add(a, b));
  return Window(dim_, std::move(cells));
}

std::string Window::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) s += "; ";
    s += cell_to_string(cells_[i]);
  }
  return s;
}

// Cells of E whose whole M-translate stays inside E. (The support the image
// of an E-pattern lives on; empty memory reads nothing, so all of E works.)
Window interior(const Window& e, const Window& m) {
  if (e.dim() != m.dim()) throw DomainError("window dimension mismatch");
  if (m.size() == 0) return e;
  std::vector<Cell> result;
  for (const auto& g : e.cells()) {
    bool ok = true;
    for (const auto& mm : m.cells())
      if (!e.contains(cell_add(g, mm))) {
        ok = false;
        break;
      }
    if (ok) result.push_back(g);
  }
  return Window(e.dim(), std::move(result));
}

Window exhaustion_box(const Window& m, int n) {
  int d = m.dim();
  Cell lo(d, 0), hi(d, 0);
  for (const auto& c : m.cells())
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  for (int i = 0; i < d; ++i) {
    lo[i] -= n;
    hi[i] += n;
  }
  return Window::box(lo, hi);
}

namespace {

long long floor_div(long long a, long long b) {  // b > 0
  long long q = a / b, r = a % b;
  if (r < 0) q -= 1;
  return q;
}

}  // namespace

Sublattice::Sublattice(int dim, std::vector<Cell> rows) : dim_(dim) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != dim) throw DomainError("basis row dimension mismatch");
  // integer row echelon by gcd elimination, column by column
  std::vector<Cell> pool = std::move(rows);
  for (int col = 0; col < dim_; ++col) {
    while (true) {
      int best = -1;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i][col] == 0) continue;
        if (best < 0 || std::llabs(pool[i][col]) < std::llabs(pool[best][col]))
          best = static_cast<int>(i);
      }
      if (best < 0) break;
      bool reduced_any = false;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (static_cast<int>(i) == best || pool[i][col] == 0) continue;
        long long q = pool[i][col] / pool[best][col];
        for (int j = 0; j < dim_; ++j) pool[i][j] -= q * pool[best][j];
        reduced_any = true;
      }
      if (!reduced_any) {
        bool done = true;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (static_cast<int>(i) != best && pool[i][col] != 0) done = false;
        if (done) {
          Cell pivot_row = pool[best];
          if (pivot_row[col] < 0)
            for (auto& v : pivot_row) v = -v;
          hnf_.push_back(std::move(pivot_row));
          pool.erase(pool.begin() + best);
          break;
        }
      }
    }
  }
  // drop zero rows left in the pool (dependent generators) and reduce above pivots
  for (std::size_t i = hnf_.size(); i-- > 0;) {
    int pcol = 0;
    while (hnf_[i][pcol] == 0) ++pcol;
    for (std::size_t j = 0; j < i; ++j) {
      long long q = floor_div(hnf_[j][pcol], hnf_[i][pcol]);
      if (q != 0)
        for (int col = 0; col < dim_; ++col) hnf_[j][col] -= q * hnf_[i][col];
    }
  }
}

Sublattice Sublattice::scaled(int dim, long long n) {
  if (n == 0) throw DomainError("zero scaling gives a rank-0 lattice");
  std::vector<Cell> rows;
  for (int i = 0; i < dim; ++i) {
    Cell r(dim, 0);
    r[i] = n;
    rows.push_back(std::move(r));
  }
  return Sublattice(dim, std::move(rows));
}

Sublattice Sublattice::diagonal(const Cell& diag) {
  int d = static_cast<int>(diag.size());
  std::vector<Cell> rows;
  for (int i = 0; i < d; ++i) {
    if (diag[i] == 0) throw DomainError("zero diagonal entry");
    Cell r(d, 0);
    r[i] = diag[i];
    rows.push_back(std::move(r));
  }
  return Sublattice(d, std::move(rows));
}

unsigned long long Sublattice::index() const {
  if (!full_rank()) throw DomainError("infinite-index sublattice (rank-deficient basis)");
  unsigned long long det = 1;
  for (int i = 0; i < dim_; ++i) det *= static_cast<unsigned long long>(hnf_[i][i]);
  return det;
}

bool Sublattice::contains(const Cell& g) const {
  Cell v = g;
  for (const auto& row : hnf_) {
    int pcol = 0;
    while (pcol < dim_ && row[pcol] == 0) ++pcol;
    if (v[pcol] % row[pcol] != 0) return false;
    long long q = v[pcol] / row[pcol];
    for (int j = 0; j < dim_; ++j) v[j] -= q * row[j];
  }
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

Cell Sublattice::coordinates(const Cell& g) const {
  Cell v = g;
  Cell coords;
  for (const auto& row : hnf_) {
    int pcol = 0;
    while (pcol < dim_ && row[pcol] == 0) ++pcol;
    if (v[pcol] % row[pcol] != 0)
      throw DomainError("cell " + cell_to_string(g) + " is not in the sublattice");
    long long q = v[pcol] / row[pcol];
    coords.push_back(q);
    for (int j = 0; j < dim_; ++j) v[j] -= q * row[j];
  }
  for (long long x : v)
    if (x != 0) throw DomainError("cell " + cell_to_string(g) + " is not in the sublattice");
  return coords;
}

Cell Sublattice::embed(const Cell& coords) const {
  if (static_cast<int>(coords.size()) != rank()) throw DomainError("coordinate rank mismatch");
  Cell v(dim_, 0);
  for (std::size_t i = 0; i < hnf_.size(); ++i)
    for (int j = 0; j < dim_; ++j) v[j] += coords[i] * hnf_[i][j];
  return v;
}

Cell Sublattice::coset_rep(const Cell& g) const {
  if (!full_rank()) throw DomainError("coset reduction needs a finite-index sublattice");
  Cell v = g;
  for (int i = 0; i < dim_; ++i) {
    long long q = floor_div(v[i], hnf_[i][i]);
    for (int j = 0; j < dim_; ++j) v[j] -= q * hnf_[i][j];
  }
  return v;
}

std::string Sublattice::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < hnf_.size(); ++i) {
    if (i) s += ";";
    s += cell_to_string(hnf_[i]);
  }
  return s;
}

Sublattice Sublattice::parse(const std::string& text, int dim, std::size_t at_line) {
  std::vector<Cell> rows;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) rows.push_back(parse_cell(item, at_line));
  if (rows.empty()) throw ParseError("empty lattice description", at_line, 1);
  if (dim <= 0) dim = static_cast<int>(rows[0].size());
  if (rows.size() == 1 && rows[0].size() == 1 && dim > 1) {
    // a single scalar means n Z^d
    return scaled(dim, rows[0][0]);
  }
  return Sublattice(dim, std::move(rows));
}

int CosetData::project(const Cell& g) const {
  Cell rep = lattice.coset_rep(g);
  int idx = representatives.index_of(rep);
  if (idx < 0) throw DomainError("internal: representative missing");
  return idx;
}

CosetData coset_data(const Sublattice& h) {
  if (!h.full_rank()) throw DomainError("coset enumeration needs a finite-index sublattice");
  int d = h.dim();
  Cell lo(d, 0), hi(d);
  for (int i = 0; i < d; ++i) hi[i] = h.basis()[i][i] - 1;
  CosetData cd;
  cd.lattice = h;
  cd.representatives = Window::box(lo, hi);
  return cd;
}

}  // namespace aca

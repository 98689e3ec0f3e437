#include "aca/automata.hpp"

#include <algorithm>
#include <sstream>

namespace aca {

std::string block_var_name(const Cell& cell, int coord) {
  return "x[" + cell_to_string(cell) + "][" + std::to_string(coord) + "]";
}

RosterRef block_roster(const Window& w, int m) {
  std::vector<std::string> names;
  names.reserve(w.size() * m);
  for (const auto& c : w.cells())
    for (int j = 1; j <= m; ++j) names.push_back(block_var_name(c, j));
  RosterRef roster = VarRoster::make(std::move(names));
  // natural order must agree with (cell, coord) so that positions are cell*m+j-1
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int j = 1; j <= m; ++j)
      if (roster->index_of(block_var_name(w.cell(i), j)) != static_cast<int>(i) * m + j - 1)
        throw DomainError("internal: block roster order mismatch");
  return roster;
}

AlgebraicSet product_set(const AlgebraicSet& alphabet, const Window& w) {
  int m = alphabet.ambient();
  RosterRef roster = block_roster(w, m);
  std::vector<MultiPoly> gens;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<int> var_map(m);
    for (int j = 0; j < m; ++j) var_map[j] = static_cast<int>(i) * m + j;
    for (const auto& g : alphabet.gens()) gens.push_back(g.transported(roster, var_map));
  }
  return AlgebraicSet(alphabet.field(), roster, std::move(gens));
}

Pattern::Pattern(AlgebraicSet alphabet, Window support, std::vector<Point> values)
    : alphabet_(std::move(alphabet)), support_(std::move(support)), values_(std::move(values)) {
  if (values_.size() != support_.size()) throw DomainError("pattern value count mismatch");
  for (const auto& v : values_)
    if (!alphabet_.contains(v))
      throw DomainError("pattern value (" + point_to_string(v) + ") violates the alphabet equations");
}

const Point& Pattern::value_at(const Cell& c) const {
  int idx = support_.index_of(c);
  if (idx < 0) throw DomainError("cell " + cell_to_string(c) + " outside the pattern support");
  return values_[idx];
}

Pattern Pattern::translated(const Cell& g) const {
  // lexicographic order is translation invariant, so values stay parallel
  return Pattern(alphabet_, support_.translated(g), values_);
}

Pattern Pattern::restricted(const Window& w) const {
  std::vector<Point> vals;
  vals.reserve(w.size());
  for (const auto& c : w.cells()) vals.push_back(value_at(c));
  return Pattern(alphabet_, w, std::move(vals));
}

bool Pattern::operator==(const Pattern& o) const {
  if (!(support_ == o.support_)) return false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (compare_points(values_[i], o.values_[i]) != 0) return false;
  return true;
}

std::string Pattern::to_text() const {
  std::string s;
  for (std::size_t i = 0; i < support_.size(); ++i)
    s += cell_to_string(support_.cell(i)) + " : " + point_to_string(values_[i]) + "\n";
  return s;
}

Pattern Pattern::parse(const std::string& text, const AlgebraicSet& alphabet, int dim) {
  std::vector<Cell> cells;
  std::vector<Point> values;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'cell : values'", lineno, 1);
    Cell c = parse_cell(line.substr(0, colon), lineno);
    if (static_cast<int>(c.size()) != dim) throw ParseError("cell dimension mismatch", lineno, 1);
    Point v;
    std::stringstream vs(line.substr(colon + 1));
    std::string item;
    while (std::getline(vs, item, ',')) v.push_back(parse_scalar(item, alphabet.field(), lineno));
    if (static_cast<int>(v.size()) != alphabet.ambient())
      throw ParseError("value tuple length mismatch", lineno, colon + 2);
    cells.push_back(std::move(c));
    values.push_back(std::move(v));
  }
  // sort values along with cells
  std::vector<std::size_t> idx(cells.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return cell_less(cells[a], cells[b]); });
  std::vector<Cell> scells;
  std::vector<Point> svalues;
  for (std::size_t i : idx) {
    scells.push_back(cells[i]);
    svalues.push_back(values[i]);
  }
  return Pattern(alphabet, Window(dim, std::move(scells)), std::move(svalues));
}

Point product_point_from_pattern(const Pattern& p) {
  Point big;
  big.reserve(p.support().size() * p.alphabet().ambient());
  for (const auto& v : p.values()) big.insert(big.end(), v.begin(), v.end());
  return big;
}

Pattern pattern_from_product_point(const AlgebraicSet& alphabet, const Window& w, const Point& big) {
  int m = alphabet.ambient();
  if (big.size() != w.size() * static_cast<std::size_t>(m))
    throw DomainError("product point length mismatch");
  std::vector<Point> values;
  values.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    values.emplace_back(big.begin() + i * m, big.begin() + (i + 1) * m);
  return Pattern(alphabet, w, std::move(values));
}

CellularAutomaton CellularAutomaton::make_unchecked(AlgebraicSet alphabet, Window memory,
                                                    std::vector<MultiPoly> rule_polys,
                                                    bool verified) {
  CellularAutomaton ca;
  ca.alphabet_ = alphabet;
  ca.memory_ = memory;
  ca.rule_ = RegularMap::make_unchecked(product_set(alphabet, memory), alphabet,
                                        std::move(rule_polys), verified);
  return ca;
}

CellularAutomaton ca_make(const AlgebraicSet& alphabet, const Window& memory,
                          std::vector<MultiPoly> rule_polys, Budget* budget) {
  if (!(*alphabet.roster() == *VarRoster::canonical(alphabet.ambient())))
    throw DomainError("alphabet must use the canonical variables t1..tm");
  CellularAutomaton ca;
  RegularMap rule =
      RegularMap::make(product_set(alphabet, memory), alphabet, std::move(rule_polys), budget);
  return CellularAutomaton::make_unchecked(alphabet, memory, rule.components, rule.verified);
}

Pattern ca_apply(const CellularAutomaton& ca, const Pattern& p) {
  if (!ca.alphabet().ideal_equal_to(p.alphabet())) throw DomainError("pattern alphabet mismatch");
  Window f = interior(p.support(), ca.memory());
  int m = ca.alphabet_ambient();
  std::vector<Point> out;
  out.reserve(f.size());
  for (const auto& g : f.cells()) {
    Point arg;
    arg.reserve(ca.memory().size() * m);
    for (const auto& mm : ca.memory().cells()) {
      const Point& v = p.value_at(cell_add(g, mm));
      arg.insert(arg.end(), v.begin(), v.end());
    }
    out.push_back(ca.rule().eval(arg));
  }
  return Pattern(ca.alphabet(), f, std::move(out));
}

RegularMap ca_truncation(const CellularAutomaton& ca, const Window& e) {
  Window f = interior(e, ca.memory());
  int m = ca.alphabet_ambient();
  AlgebraicSet source = product_set(ca.alphabet(), e);
  AlgebraicSet target = product_set(ca.alphabet(), f);
  RosterRef eroster = source.roster();
  std::vector<MultiPoly> comps;
  comps.reserve(f.size() * m);
  for (const auto& g : f.cells()) {
    // wire rule block (cell t, coord j) to pattern variable (g + t, j)
    std::vector<int> var_map(ca.memory().size() * m);
    for (std::size_t ti = 0; ti < ca.memory().size(); ++ti) {
      Cell target_cell = cell_add(g, ca.memory().cell(ti));
      int e_idx = e.index_of(target_cell);
      if (e_idx < 0) throw DomainError("internal: truncation cell outside window");
      for (int j = 0; j < m; ++j) var_map[ti * m + j] = e_idx * m + j;
    }
    for (int j = 0; j < m; ++j)
      comps.push_back(ca.rule().components[j].transported(eroster, var_map));
  }
  return RegularMap::make_unchecked(std::move(source), std::move(target), std::move(comps),
                                    ca.verified());
}

CellularAutomaton ca_compose(const CellularAutomaton& sigma, const CellularAutomaton& tau) {
  if (sigma.dim() != tau.dim()) throw DomainError("dimension mismatch in composition");
  if (!sigma.alphabet().ideal_equal_to(tau.alphabet()))
    throw DomainError("alphabet mismatch in composition");
  int m = sigma.alphabet_ambient();
  const Window& s = sigma.memory();
  const Window& t = tau.memory();
  Window st = s.sumset(t);
  RosterRef st_roster = block_roster(st, m);
  FieldRef field = sigma.field();

  // images of sigma's block variables: y[s][j] = tau-rule_j shifted by s
  std::vector<MultiPoly> images(s.size() * m);
  for (std::size_t si = 0; si < s.size(); ++si) {
    std::vector<int> var_map(t.size() * m);
    for (std::size_t ti = 0; ti < t.size(); ++ti) {
      int st_idx = st.index_of(cell_add(s.cell(si), t.cell(ti)));
      for (int j = 0; j < m; ++j) var_map[ti * m + j] = st_idx * m + j;
    }
    for (int j = 0; j < m; ++j)
      images[si * m + j] = tau.rule().components[j].transported(st_roster, var_map);
  }
  std::vector<MultiPoly> comps;
  comps.reserve(m);
  if (s.size() == 0) {
    // sigma constant: the composite is the same constant
    for (int j = 0; j < m; ++j)
      comps.push_back(sigma.rule().components[j].transported(st_roster, {}));
  } else {
    for (int j = 0; j < m; ++j) comps.push_back(sigma.rule().components[j].substitute(images));
  }
  return CellularAutomaton::make_unchecked(sigma.alphabet(), st, std::move(comps),
                                           sigma.verified() && tau.verified());
}

MinimalMemoryResult ca_minimal_memory(const CellularAutomaton& ca) {
  int m = ca.alphabet_ambient();
  std::vector<MultiPoly> canon;
  for (const auto& c : ca.rule().components)
    canon.push_back(ca.field()->is_finite() ? functional_normal_form(c) : c);

  std::vector<bool> block_used(ca.memory().size(), false);
  for (const auto& c : canon) {
    std::vector<bool> used = c.vars_used();
    for (std::size_t v = 0; v < used.size(); ++v)
      if (used[v]) block_used[v / m] = true;
  }
  std::vector<Cell> kept;
  for (std::size_t i = 0; i < ca.memory().size(); ++i)
    if (block_used[i]) kept.push_back(ca.memory().cell(i));
  Window m0(ca.dim(), std::move(kept));

  RosterRef new_roster = block_roster(m0, m);
  std::vector<int> var_map(ca.memory().size() * m, -1);
  for (std::size_t i = 0; i < ca.memory().size(); ++i) {
    int ni = m0.index_of(ca.memory().cell(i));
    if (ni < 0) continue;
    for (int j = 0; j < m; ++j) var_map[i * m + j] = ni * m + j;
  }
  std::vector<MultiPoly> comps;
  for (const auto& c : canon) comps.push_back(c.transported(new_roster, var_map));
  return {m0, CellularAutomaton::make_unchecked(ca.alphabet(), m0, std::move(comps), ca.verified())};
}

bool ca_depends_on_cell(const CellularAutomaton& ca, const Cell& cell, Budget* budget) {
  if (!ca.field()->is_finite()) throw DomainError("dependence oracle needs a finite field");
  int idx = ca.memory().index_of(cell);
  if (idx < 0) return false;
  int m = ca.alphabet_ambient();
  std::vector<Point> pts = enumerate_points(ca.rule().source, budget);
  // key = the argument with the tested block erased; output must be constant
  // on every key class
  auto erase_block = [&](const Point& p) {
    Point q;
    q.reserve(p.size() - m);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (static_cast<int>(i / m) != idx) q.push_back(p[i]);
    return q;
  };
  std::vector<std::pair<Point, Point>> keyed;
  keyed.reserve(pts.size());
  for (const auto& p : pts) keyed.push_back({erase_block(p), ca.rule().eval(p)});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    int c = compare_points(a.first, b.first);
    if (c != 0) return c < 0;
    return compare_points(a.second, b.second) < 0;
  });
  for (std::size_t i = 1; i < keyed.size(); ++i)
    if (compare_points(keyed[i].first, keyed[i - 1].first) == 0 &&
        compare_points(keyed[i].second, keyed[i - 1].second) != 0)
      return true;
  return false;
}

CellularAutomaton ca_change_group(const CellularAutomaton& ca, const Sublattice& h, GroupChange dir) {
  int m = ca.alphabet_ambient();
  std::vector<Cell> new_cells;
  if (dir == GroupChange::Restrict) {
    if (h.dim() != ca.dim()) throw DomainError("sublattice dimension mismatch");
    for (const auto& c : ca.memory().cells()) {
      if (!h.contains(c))
        throw DomainError("memory cell " + cell_to_string(c) + " is outside the sublattice");
      new_cells.push_back(h.coordinates(c));
    }
  } else {
    if (h.rank() != ca.dim())
      throw DomainError("induction requires the automaton dimension to equal the sublattice rank");
    for (const auto& c : ca.memory().cells()) new_cells.push_back(h.embed(c));
  }
  int new_dim = dir == GroupChange::Restrict ? h.rank() : h.dim();
  Window new_memory(new_dim, new_cells);
  RosterRef new_roster = block_roster(new_memory, m);
  // cells may be reordered by the coordinate change; transport blockwise
  std::vector<int> var_map(ca.memory().size() * m);
  for (std::size_t i = 0; i < ca.memory().size(); ++i) {
    int ni = new_memory.index_of(new_cells[i]);
    for (int j = 0; j < m; ++j) var_map[i * m + j] = ni * m + j;
  }
  std::vector<MultiPoly> comps;
  for (const auto& c : ca.rule().components) comps.push_back(c.transported(new_roster, var_map));
  return CellularAutomaton::make_unchecked(ca.alphabet(), new_memory, std::move(comps),
                                           ca.verified());
}

RegularMap ca_periodic_map(const CellularAutomaton& ca, const Sublattice& h) {
  if (h.dim() != ca.dim()) throw DomainError("sublattice dimension mismatch");
  CosetData cd = coset_data(h);  // throws on infinite index
  int m = ca.alphabet_ambient();
  AlgebraicSet space = product_set(ca.alphabet(), cd.representatives);
  RosterRef roster = space.roster();
  std::vector<MultiPoly> comps;
  comps.reserve(cd.representatives.size() * m);
  for (const auto& rep : cd.representatives.cells()) {
    std::vector<int> var_map(ca.memory().size() * m);
    for (std::size_t ti = 0; ti < ca.memory().size(); ++ti) {
      int target = cd.project(cell_add(rep, ca.memory().cell(ti)));
      for (int j = 0; j < m; ++j) var_map[ti * m + j] = target * m + j;
    }
    for (int j = 0; j < m; ++j)
      comps.push_back(ca.rule().components[j].transported(roster, var_map));
  }
  return RegularMap::make_unchecked(space, space, std::move(comps), ca.verified());
}

Pattern PeriodicConfiguration::pattern_on(const Window& w) const {
  std::vector<Point> vals;
  vals.reserve(w.size());
  for (const auto& c : w.cells()) vals.push_back(value_at(c));
  return Pattern(alphabet, w, std::move(vals));
}

std::string PeriodicConfiguration::to_text() const {
  std::string s = "lattice=" + cosets.lattice.to_string() + "\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    s += cell_to_string(cosets.representatives.cell(i)) + " : " + point_to_string(values[i]) + "\n";
  return s;
}

PeriodicConfiguration periodic_from_product_point(const CellularAutomaton& ca, const Sublattice& h,
                                                  const Point& big) {
  CosetData cd = coset_data(h);
  Pattern p = pattern_from_product_point(ca.alphabet(), cd.representatives, big);
  return PeriodicConfiguration{ca.alphabet(), std::move(cd), p.values()};
}

SurjunctivityReport surjunctivity_check(const CellularAutomaton& ca,
                                        const std::vector<Sublattice>& lattices, int tower_max_k,
                                        Budget* budget) {
  SurjunctivityReport rep;
  for (const auto& h : lattices) {
    SurjunctivityEntry entry;
    entry.lattice = h;
    RegularMap tmap = ca_periodic_map(ca, h);
    entry.report = injectivity_report(tmap, tower_max_k, budget);
    rep.injective_everywhere = rep.injective_everywhere && entry.report.injective_all_levels;
    rep.surjective_everywhere = rep.surjective_everywhere && entry.report.surjective_all_levels;
    for (const auto& lv : entry.report.levels) {
      if (lv.collision && lv.k == 1) {
        entry.collision = {periodic_from_product_point(ca, h, lv.collision->a),
                           periodic_from_product_point(ca, h, lv.collision->b)};
        break;
      }
    }
    rep.entries.push_back(std::move(entry));
  }
  if (rep.injective_everywhere) {
    rep.verdict =
        "injective => surjective observed on every tested sublattice (periodic-configuration "
        "evidence for surjunctivity)";
  } else {
    rep.verdict = "non-injective: a periodic colliding pair certifies the automaton non-injective";
  }
  return rep;
}

}  // namespace aca

#include "aca/projlim.hpp"

#include <algorithm>
#include <map>

namespace aca {

struct ProjectiveSequence::State {
  std::function<SequenceLevel(int)> level_fn;
  std::function<RegularMap(int)> transition_fn;
  bool check_containment = true;
  std::mutex mu;
  std::vector<std::optional<SequenceLevel>> levels;
  std::vector<std::optional<RegularMap>> transitions;
};

ProjectiveSequence::ProjectiveSequence(std::function<SequenceLevel(int)> level_fn,
                                       std::function<RegularMap(int)> transition_fn,
                                       bool check_containment)
    : state_(std::make_shared<State>()) {
  state_->level_fn = std::move(level_fn);
  state_->transition_fn = std::move(transition_fn);
  state_->check_containment = check_containment;
}

ProjectiveSequence ProjectiveSequence::from_levels(std::vector<SequenceLevel> levels,
                                                   std::vector<RegularMap> transitions,
                                                   bool check_containment) {
  auto lv = std::make_shared<std::vector<SequenceLevel>>(std::move(levels));
  auto tr = std::make_shared<std::vector<RegularMap>>(std::move(transitions));
  return ProjectiveSequence(
      [lv](int n) -> SequenceLevel {
        if (n < 0 || n >= static_cast<int>(lv->size()))
          throw DomainError("sequence level " + std::to_string(n) + " not materializable");
        return (*lv)[n];
      },
      [tr](int n) -> RegularMap {
        if (n < 0 || n >= static_cast<int>(tr->size()))
          throw DomainError("sequence transition " + std::to_string(n) + " not materializable");
        return (*tr)[n];
      },
      check_containment);
}

const SequenceLevel& ProjectiveSequence::level(int n, Budget* budget) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  if (n < 0) throw DomainError("negative level");
  if (state_->levels.size() <= static_cast<std::size_t>(n))
    state_->levels.resize(n + 1);
  if (!state_->levels[n]) state_->levels[n] = state_->level_fn(n);
  (void)budget;
  return *state_->levels[n];
}

const RegularMap& ProjectiveSequence::transition(int n, Budget* budget) const {
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    if (n < 0) throw DomainError("negative transition index");
    if (state_->transitions.size() <= static_cast<std::size_t>(n))
      state_->transitions.resize(n + 1);
    if (state_->transitions[n]) return *state_->transitions[n];
  }
  RegularMap g = state_->transition_fn(n);
  const SequenceLevel& hi = level(n + 1, budget);
  const SequenceLevel& lo = level(n, budget);
  if (!g.source.same_ambient(hi.ambient) || !g.target.same_ambient(lo.ambient))
    throw DomainError("transition map does not connect the levels' ambients");
  if (state_->check_containment && hi.ambient.field()->is_finite()) {
    for (const Point& p : enumerate_points(hi.set, budget))
      if (!lo.set.contains(g.eval(p)))
        throw DomainError("transition violates containment g_n(X_{n+1}) ⊆ X_n at level " +
                          std::to_string(n));
  }
  std::lock_guard<std::mutex> lock(state_->mu);
  if (!state_->transitions[n]) state_->transitions[n] = std::move(g);
  return *state_->transitions[n];
}

RegularMap ProjectiveSequence::composite(int n, int m, Budget* budget) const {
  if (m < n) throw DomainError("composite f_{nm} needs m >= n");
  if (m == n) return RegularMap::identity(level(n, budget).ambient);
  RegularMap acc = transition(m - 1, budget);
  for (int k = m - 2; k >= n; --k) acc = map_compose(transition(k, budget), acc);
  return acc;
}

namespace {

std::vector<Point> sorted_unique(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return compare_points(a, b) == 0; }),
            pts.end());
  return pts;
}

std::vector<Point> intersect_sorted(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_points(a[i], b[j]);
    if (c == 0) {
      out.push_back(a[i]);
      ++i, ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

bool points_equal(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare_points(a[i], b[i]) != 0) return false;
  return true;
}

}  // namespace

UniversalPointsResult universal_points(const ProjectiveSequence& seq, int n, int horizon,
                                       Budget* budget) {
  if (horizon < n) throw DomainError("horizon below level");
  UniversalPointsResult res;
  std::vector<Point> inter = sorted_unique(enumerate_points(seq.level(n, budget).set, budget));
  res.stage_sizes.push_back(inter.size());
  for (int m = n + 1; m <= horizon; ++m) {
    std::vector<Point> pts = enumerate_points(seq.level(m, budget).set, budget);
    for (int k = m - 1; k >= n; --k) {
      const RegularMap& g = seq.transition(k, budget);
      for (auto& p : pts) p = g.eval(p);
    }
    std::vector<Point> prev = inter;
    inter = intersect_sorted(inter, sorted_unique(std::move(pts)));
    res.stage_sizes.push_back(inter.size());
    if (points_equal(prev, inter)) res.stabilized = true;
  }
  res.points = std::move(inter);
  return res;
}

UniversalClosureResult universal_closure_chain(const ProjectiveSequence& seq, int n, int horizon,
                                               Budget* budget) {
  UniversalClosureResult res;
  for (int m = n; m <= horizon; ++m) {
    AlgebraicSet closed = cs_closure(seq.level(m, budget).set, budget);
    AlgebraicSet image;
    if (m == n) {
      image = closed;
    } else {
      RegularMap f = seq.composite(n, m, budget);
      RegularMap restricted =
          RegularMap::make_unchecked(closed, seq.level(n, budget).ambient, f.components, f.verified);
      image = image_closure(restricted, budget);
    }
    if (!res.chain.empty() && res.stabilized_at < 0 &&
        image.ideal_equal_to(res.chain.back(), budget)) {
      res.stabilized = true;
      res.stabilized_at = m;
    }
    res.chain.push_back(std::move(image));
  }
  return res;
}

MlLiftResult ml_lift(const ProjectiveSequence& seq, int depth, Budget* budget) {
  MlLiftResult res;
  for (int n = 0; n <= depth; ++n) {
    if (enumerate_points(seq.level(n, budget).set, budget).empty()) {
      res.obstruction_level = n;
      return res;
    }
  }
  std::vector<std::vector<Point>> universal(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    universal[n] = universal_points(seq, n, depth, budget).points;
    res.universal_sizes.push_back(universal[n].size());
    if (universal[n].empty()) {
      res.obstruction_level = n;  // cannot happen with verified containment
      return res;
    }
  }
  res.thread.push_back(universal[0].front());
  for (int n = 0; n < depth; ++n) {
    const RegularMap& g = seq.transition(n, budget);
    bool found = false;
    for (const Point& cand : universal[n + 1]) {
      if (compare_points(g.eval(cand), res.thread.back()) == 0) {
        res.thread.push_back(cand);
        found = true;
        break;
      }
    }
    if (!found)
      throw DomainError("lifting failed at level " + std::to_string(n + 1) +
                        ": universal surjectivity violated (containment not satisfied?)");
  }
  res.ok = true;
  return res;
}

ConstructibleSet points_to_constructible(const std::vector<Point>& points, int ambient,
                                         const FieldRef& field) {
  RosterRef roster = VarRoster::canonical(ambient);
  MultiPoly one = MultiPoly::constant(field, roster, 1);
  std::vector<LocallyClosedPiece> pieces;
  for (const auto& p : points) {
    std::vector<MultiPoly> gens;
    for (int i = 0; i < ambient; ++i)
      gens.push_back(MultiPoly::variable(field, roster, i) -
                     MultiPoly::constant(field, roster, p[i]));
    pieces.push_back({AlgebraicSet(field, roster, std::move(gens)), one});
  }
  return ConstructibleSet(field, roster, std::move(pieces));
}

namespace {

// Fiber sequence of a closed-image search: X_n = tau_n^{-1}(y|F_n) inside
// A^{E_n}, transitions are the window restrictions.
ProjectiveSequence fiber_sequence(const CellularAutomaton& ca,
                                  const std::function<Point(const Cell&)>& target) {
  int m = ca.alphabet_ambient();
  auto level_fn = [ca, target, m](int n) -> SequenceLevel {
    Window e = exhaustion_box(ca.memory(), n);
    Window f = interior(e, ca.memory());
    RegularMap trunc = ca_truncation(ca, e);
    std::vector<MultiPoly> gens = trunc.source.gens();
    for (std::size_t fi = 0; fi < f.size(); ++fi) {
      Point yv = target(f.cell(fi));
      if (!ca.alphabet().contains(yv))
        throw DomainError("target value at " + cell_to_string(f.cell(fi)) +
                          " violates the alphabet equations");
      for (int j = 0; j < m; ++j)
        gens.push_back(trunc.components[fi * m + j] -
                       MultiPoly::constant(ca.field(), trunc.source.roster(), yv[j]));
    }
    AlgebraicSet fiber(ca.field(), trunc.source.roster(), std::move(gens));
    return {trunc.source, ConstructibleSet::from_closed(fiber)};
  };
  auto transition_fn = [ca, m](int n) -> RegularMap {
    Window lo = exhaustion_box(ca.memory(), n);
    Window hi = exhaustion_box(ca.memory(), n + 1);
    AlgebraicSet source = product_set(ca.alphabet(), hi);
    AlgebraicSet target_set = product_set(ca.alphabet(), lo);
    std::vector<MultiPoly> comps;
    comps.reserve(lo.size() * m);
    for (const auto& c : lo.cells()) {
      int idx = hi.index_of(c);
      if (idx < 0) throw DomainError("internal: window exhaustion not nested");
      for (int j = 0; j < m; ++j)
        comps.push_back(
            MultiPoly::variable(ca.field(), source.roster(), static_cast<std::size_t>(idx) * m + j));
    }
    return RegularMap::make_unchecked(std::move(source), std::move(target_set), std::move(comps),
                                      true);
  };
  // containment holds by construction: restriction of a deeper fiber point
  // satisfies the shallower constraints
  return ProjectiveSequence(level_fn, transition_fn, /*check_containment=*/false);
}

}  // namespace

ClosedImageResult closed_image_search(const CellularAutomaton& ca,
                                      const std::function<Point(const Cell&)>& target, int depth,
                                      Budget* budget) {
  ClosedImageResult res;
  ProjectiveSequence seq = fiber_sequence(ca, target);
  Window e_depth = exhaustion_box(ca.memory(), depth);
  Window f_depth = interior(e_depth, ca.memory());

  if (ca.field()->is_finite()) {
    MlLiftResult lift = ml_lift(seq, depth, budget);
    if (!lift.ok) {
      res.status = ClosedImageResult::Status::EmptyFiber;
      res.obstruction_level = lift.obstruction_level;
      res.note = "no pattern on E_" + std::to_string(lift.obstruction_level) +
                 " maps onto the target: the target is outside the image";
      return res;
    }
    Pattern x = pattern_from_product_point(ca.alphabet(), e_depth, lift.thread.back());
    Pattern image = ca_apply(ca, x);
    for (const auto& c : f_depth.cells())
      if (compare_points(image.value_at(c), target(c)) != 0)
        throw DomainError("internal: lifted preimage fails the round trip");
    res.status = ClosedImageResult::Status::PreimageFound;
    res.preimage = std::move(x);
    res.matched_window = f_depth;
    res.note = "exact preimage on the depth window";
    return res;
  }

  // infinite field: closure-chain evidence only
  for (int n = 0; n <= depth; ++n) {
    const SequenceLevel& lv = seq.level(n, budget);
    bool consistent = true;
    for (const auto& pc : lv.set.pieces())
      if (contains_one(pc.closed.ideal(), budget)) consistent = false;
    if (lv.set.pieces().empty()) consistent = false;
    res.level_consistent.push_back(consistent);
  }
  UniversalClosureResult chain = universal_closure_chain(seq, 0, depth, budget);
  res.closure_chain = std::move(chain.chain);
  res.chain_stabilized = chain.stabilized;
  res.status = ClosedImageResult::Status::SymbolicEvidence;
  res.note =
      "symbolic evidence only: fiber ideals are consistent and the image-closure chain is "
      "recorded; limit nonemptiness is not certified over an infinite field";
  return res;
}

namespace {

std::string stem_var_name(const char* stem, const Cell& cell, int coord) {
  return std::string(stem) + "[" + cell_to_string(cell) + "][" + std::to_string(coord) + "]";
}

RosterRef pair_roster(const Window& e, const Window& f, int m, std::size_t& u_count) {
  std::vector<std::string> names;
  for (const auto& c : e.cells())
    for (int j = 1; j <= m; ++j) names.push_back(stem_var_name("u", c, j));
  u_count = names.size();
  for (const auto& c : f.cells())
    for (int j = 1; j <= m; ++j) names.push_back(stem_var_name("v", c, j));
  RosterRef roster = VarRoster::make(names);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int j = 1; j <= m; ++j)
      if (roster->index_of(stem_var_name("u", e.cell(i), j)) != static_cast<int>(i) * m + j - 1)
        throw DomainError("internal: pair roster order mismatch (u)");
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int j = 1; j <= m; ++j)
      if (roster->index_of(stem_var_name("v", f.cell(i), j)) !=
          static_cast<int>(u_count) + static_cast<int>(i) * m + j - 1)
        throw DomainError("internal: pair roster order mismatch (v)");
  return roster;
}

// Try to solve every center coordinate u[0][j] as a polynomial in the image
// variables, by repeatedly isolating graph equations that are linear with
// constant coefficient in a single unknown. Success certifies the pair set
// empty and yields the inverse rule components over block_roster(F_n, m).
std::optional<std::vector<MultiPoly>> solve_determination(const CellularAutomaton& ca,
                                                          const RegularMap& trunc, const Window& e,
                                                          const Window& f) {
  int m = ca.alphabet_ambient();
  const FieldRef& field = ca.field();
  std::size_t nu = 0;
  RosterRef mixed = pair_roster(e, f, m, nu);

  // graph equations v[g][j] - component(u)
  std::vector<int> to_u(e.size() * m);
  for (std::size_t i = 0; i < to_u.size(); ++i) to_u[i] = static_cast<int>(i);
  std::vector<MultiPoly> eqs;
  for (std::size_t fi = 0; fi < f.size(); ++fi)
    for (int j = 0; j < m; ++j) {
      MultiPoly vvar = MultiPoly::variable(field, mixed, nu + fi * m + j);
      eqs.push_back(vvar - trunc.components[fi * m + j].transported(mixed, to_u));
    }

  std::vector<std::optional<MultiPoly>> solved(nu);
  auto substituted = [&](const MultiPoly& p) {
    std::vector<bool> used = p.vars_used();
    bool touched = false;
    for (std::size_t i = 0; i < nu; ++i)
      if (used[i] && solved[i]) touched = true;
    if (!touched) return p;
    std::vector<MultiPoly> images;
    images.reserve(mixed->size());
    for (std::size_t i = 0; i < mixed->size(); ++i) {
      if (i < nu && solved[i])
        images.push_back(*solved[i]);
      else
        images.push_back(MultiPoly::variable(field, mixed, i));
    }
    return p.substitute(images);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& eq : eqs) {
      MultiPoly cur = substituted(eq);
      std::vector<bool> used = cur.vars_used();
      int uv = -1;
      int count = 0;
      for (std::size_t i = 0; i < nu; ++i)
        if (used[i]) {
          uv = static_cast<int>(i);
          ++count;
        }
      if (count != 1 || solved[uv]) continue;
      // require cur = c*uv + rest with constant c and rest free of uv
      FieldElement c = FieldElement::zero(field);
      bool linear = true;
      for (const auto& t : cur.terms()) {
        if (t.exps[uv] == 0) continue;
        if (t.exps[uv] != 1) {
          linear = false;
          break;
        }
        bool pure = true;
        for (std::size_t i = 0; i < t.exps.size(); ++i)
          if (i != static_cast<std::size_t>(uv) && t.exps[i] != 0) pure = false;
        if (!pure) {
          linear = false;
          break;
        }
        c = c + t.coeff;
      }
      if (!linear || c.is_zero()) continue;
      MultiPoly uv_poly = MultiPoly::variable(field, mixed, uv);
      MultiPoly rest = cur - uv_poly.scaled(c);
      solved[uv] = rest.scaled(-(c.inverse()));
      progress = true;
    }
  }

  int center = e.index_of(Cell(e.dim(), 0));
  if (center < 0) throw DomainError("internal: window lost the origin");
  RosterRef inv_roster = block_roster(f, m);
  std::vector<int> var_map(mixed->size(), -1);
  for (std::size_t i = 0; i < f.size() * m; ++i) var_map[nu + i] = static_cast<int>(i);
  std::vector<MultiPoly> out;
  for (int j = 0; j < m; ++j) {
    const auto& expr = solved[center * m + j];
    if (!expr) return std::nullopt;
    out.push_back(expr->transported(inv_roster, var_map));
  }
  return out;
}

struct EnumDecision {
  bool decided = false;
  bool determined = false;
  std::optional<std::pair<Point, Point>> witness;  // product points over A^{E_n}
  std::vector<MultiPoly> inverse;                  // over block_roster(F_n, m) when determined
};

EnumDecision decide_by_enumeration(const CellularAutomaton& ca, const RegularMap& trunc,
                                   const Window& e, const Window& f, Budget* budget) {
  EnumDecision d;
  int m = ca.alphabet_ambient();
  const FieldRef& field = ca.field();
  unsigned long long grid = 1;
  constexpr unsigned long long kGridCap = 8'000'000;
  for (std::size_t i = 0; i < e.size() * static_cast<std::size_t>(m); ++i) {
    if (grid > kGridCap / field->q) return d;  // too large, let the caller move on
    grid *= field->q;
  }
  int center = e.index_of(Cell(e.dim(), 0));

  std::vector<Point> src = enumerate_points(trunc.source, budget);
  struct Row {
    Point img;
    Point center_val;
    const Point* src;
  };
  std::vector<Row> rows;
  rows.reserve(src.size());
  for (const auto& p : src) {
    Point cv(p.begin() + center * m, p.begin() + (center + 1) * m);
    rows.push_back({trunc.eval(p), std::move(cv), &p});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    int c = compare_points(a.img, b.img);
    if (c != 0) return c < 0;
    return compare_points(*a.src, *b.src) < 0;
  });

  d.decided = true;
  d.determined = true;
  std::vector<Point> dom;
  std::vector<Point> centers;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && compare_points(rows[j].img, rows[i].img) == 0) ++j;
    for (std::size_t k = i + 1; k < j; ++k) {
      if (compare_points(rows[k].center_val, rows[i].center_val) != 0) {
        d.determined = false;
        if (!d.witness) d.witness = {*rows[i].src, *rows[k].src};
        break;
      }
    }
    if (!d.determined) break;
    dom.push_back(rows[i].img);
    centers.push_back(rows[i].center_val);
    i = j;
  }
  if (!d.determined) return d;

  RosterRef inv_roster = block_roster(f, m);
  int ambient = static_cast<int>(f.size()) * m;
  std::vector<int> ident(ambient);
  for (int i2 = 0; i2 < ambient; ++i2) ident[i2] = i2;
  for (int j = 0; j < m; ++j) {
    std::vector<FieldElement> vals;
    vals.reserve(centers.size());
    for (const auto& cv : centers) vals.push_back(cv[j]);
    MultiPoly nu = interpolate_on_points(dom, vals, ambient, field, budget);
    d.inverse.push_back(nu.transported(inv_roster, ident));
  }
  return d;
}

Pattern random_pattern(const AlgebraicSet& alphabet, const Window& w,
                       const std::vector<Point>& alphabet_points, Rng& rng) {
  std::vector<Point> vals;
  vals.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    vals.push_back(alphabet_points[rng.below(alphabet_points.size())]);
  return Pattern(alphabet, w, std::move(vals));
}

}  // namespace

ConstructibleSet reversibility_pair_set(const CellularAutomaton& ca, int n, Budget* budget) {
  (void)budget;
  int m = ca.alphabet_ambient();
  const FieldRef& field = ca.field();
  Window e = exhaustion_box(ca.memory(), n);
  Window f = interior(e, ca.memory());
  RegularMap trunc = ca_truncation(ca, e);
  std::size_t nu = 0;
  RosterRef roster = pair_roster(e, e, m, nu);

  std::vector<int> to_u(e.size() * m), to_v(e.size() * m);
  for (std::size_t i = 0; i < e.size() * static_cast<std::size_t>(m); ++i) {
    to_u[i] = static_cast<int>(i);
    to_v[i] = static_cast<int>(nu + i);
  }
  std::vector<MultiPoly> gens;
  for (const auto& g : trunc.source.gens()) {
    gens.push_back(g.transported(roster, to_u));
    gens.push_back(g.transported(roster, to_v));
  }
  for (const auto& comp : trunc.components)
    gens.push_back(comp.transported(roster, to_u) - comp.transported(roster, to_v));
  AlgebraicSet closed(field, roster, std::move(gens));

  int center = e.index_of(Cell(e.dim(), 0));
  std::vector<LocallyClosedPiece> pieces;
  for (int j = 0; j < m; ++j) {
    MultiPoly diff = MultiPoly::variable(field, roster, center * m + j) -
                     MultiPoly::variable(field, roster, nu + center * m + j);
    pieces.push_back({closed, diff});
  }
  return ConstructibleSet(field, roster, std::move(pieces));
}

ReversibilityResult reversibility_search(const CellularAutomaton& ca, int depth_max,
                                         Budget* budget) {
  if (!ca.field()->is_finite())
    throw DomainError("reversibility search runs over finite fields");
  ReversibilityResult res;
  res.status = ReversibilityResult::Status::Inconclusive;
  int m = ca.alphabet_ambient();
  std::string diag;

  for (int n = 0; n <= depth_max; ++n) {
    Window e = exhaustion_box(ca.memory(), n);
    Window f = interior(e, ca.memory());
    RegularMap trunc = ca_truncation(ca, e);

    std::optional<std::vector<MultiPoly>> inv = solve_determination(ca, trunc, e, f);
    std::vector<MultiPoly> inv_polys;
    if (inv) {
      diag += "level " + std::to_string(n) + ": empty pair set (symbolic determination)\n";
      inv_polys = std::move(*inv);
    } else {
      EnumDecision d = decide_by_enumeration(ca, trunc, e, f, budget);
      if (!d.decided) {
        diag += "level " + std::to_string(n) + ": undecided (grid too large, no symbolic solve)\n";
        continue;
      }
      if (!d.determined) {
        diag += "level " + std::to_string(n) + ": pair set nonempty (witness recorded)\n";
        res.witness = {pattern_from_product_point(ca.alphabet(), e, d.witness->first),
                       pattern_from_product_point(ca.alphabet(), e, d.witness->second)};
        res.witness_level = n;
        continue;
      }
      diag += "level " + std::to_string(n) + ": empty pair set (exhaustive enumeration)\n";
      inv_polys = std::move(d.inverse);
    }

    // inverse with memory window F_n, canonical form, minimized
    for (auto& p : inv_polys) p = functional_normal_form(p);
    CellularAutomaton raw =
        CellularAutomaton::make_unchecked(ca.alphabet(), f, std::move(inv_polys), ca.verified());
    MinimalMemoryResult minimized = ca_minimal_memory(raw);
    CellularAutomaton inverse = minimized.automaton;

    // round-trip spot check
    Rng rng(0x5eed);
    std::vector<Point> alpha_pts = enumerate_points(ca.alphabet(), budget);
    bool ok = !alpha_pts.empty();
    Window probe = exhaustion_box(ca.memory().united(inverse.memory()), 2);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      Pattern x = random_pattern(ca.alphabet(), probe, alpha_pts, rng);
      Pattern back = ca_apply(inverse, ca_apply(ca, x));
      if (!(x.restricted(back.support()) == back)) ok = false;
      Pattern y = random_pattern(ca.alphabet(), probe, alpha_pts, rng);
      Pattern fwd = ca_apply(ca, ca_apply(inverse, y));
      if (!(y.restricted(fwd.support()) == fwd)) ok = false;
    }
    res.status = ReversibilityResult::Status::InverseFound;
    res.inverse = std::move(inverse);
    res.concluded_level = n;
    res.roundtrip_verified = ok;
    if (!ok)
      diag += "round-trip spot check failed: determined center without global inverse\n";
    res.diagnostics = diag;
    return res;
  }

  // no level concluded: look for an exact periodic certificate
  constexpr unsigned long long kGridCap = 2'000'000;
  std::vector<Sublattice> lattices;
  if (ca.dim() == 1) {
    for (int nn = 1; nn <= 4; ++nn) lattices.push_back(Sublattice::scaled(1, nn));
  } else {
    for (int total = 1; total <= 8; ++total)
      for (int a = 1; a <= total; ++a)
        if (total % a == 0) {
          Cell diag_cell(ca.dim(), 1);
          diag_cell[0] = a;
          diag_cell[1] = total / a;
          lattices.push_back(Sublattice::diagonal(diag_cell));
        }
  }
  for (const auto& h : lattices) {
    unsigned long long pts = 1;
    bool fits = true;
    for (unsigned long long i = 0; i < h.index() * static_cast<unsigned long long>(m); ++i) {
      if (pts > kGridCap / ca.field()->q) {
        fits = false;
        break;
      }
      pts *= ca.field()->q;
    }
    if (!fits) continue;
    RegularMap tmap = ca_periodic_map(ca, h);
    if (auto col = find_collision(tmap, budget)) {
      res.periodic_witness = {periodic_from_product_point(ca, h, col->a),
                              periodic_from_product_point(ca, h, col->b)};
      diag += "periodic colliding pair on lattice " + h.to_string() +
              ": exact non-injectivity certificate\n";
      break;
    }
  }
  if (res.witness || res.periodic_witness) {
    res.status = ReversibilityResult::Status::WitnessPair;
    if (res.witness && !res.periodic_witness)
      diag += "witness pair survives to the maximum depth: non-injectivity candidate\n";
  } else {
    diag += "no level decided and no witness found up to depth " + std::to_string(depth_max) + "\n";
  }
  res.diagnostics = diag;
  return res;
}

std::vector<mpq_class> real_counterexample_thresholds(int kmax) {
  if (kmax < 1) throw DomainError("threshold count must be at least 1");
  std::vector<mpq_class> out;
  mpz_class b = 1;
  for (int k = 1; k <= kmax; ++k) {
    out.emplace_back(b);
    b = 1 + b * b;
  }
  return out;
}

Pattern window_preimage_chain(const Pattern& y, const FieldElement& seed) {
  if (y.support().dim() != 1) throw DomainError("window preimage chain is one-dimensional");
  if (y.alphabet().ambient() != 1 || !y.alphabet().gens().empty())
    throw DomainError("window preimage chain runs on the full affine line");
  const auto& cells = y.support().cells();
  if (cells.empty()) throw DomainError("empty target window");
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (cells[i][0] != cells[i - 1][0] + 1)
      throw DomainError("target window must be a contiguous interval");
  long long m0 = cells.front()[0];
  long long len = static_cast<long long>(cells.size());

  std::vector<Cell> out_cells;
  std::vector<Point> out_vals;
  FieldElement x = seed;
  out_cells.push_back({m0});
  out_vals.push_back({x});
  for (long long n = m0; n < m0 + len; ++n) {
    x = y.value_at({n})[0] + x * x;
    out_cells.push_back({n + 1});
    out_vals.push_back({x});
  }
  return Pattern(y.alphabet(), Window(1, std::move(out_cells)), std::move(out_vals));
}

}  // namespace aca

#include "aca/geometry.hpp"

#include <algorithm>

#include "aca/enumerate.hpp"

namespace aca {

int compare_points(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DomainError("point dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

std::string point_to_string(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].to_string();
  }
  return s;
}

AlgebraicSet::AlgebraicSet(FieldRef field, RosterRef roster, std::vector<MultiPoly> gens)
    : field_(std::move(field)), roster_(std::move(roster)), cache_(std::make_shared<GbCache>()) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!same_field(g.field(), field_)) throw DomainError("generator field mismatch");
    if (!(*g.roster() == *roster_)) throw DomainError("generator uses variables outside the ambient space");
    bool dup = false;
    for (const auto& h : gens_)
      if (h == g) {
        dup = true;
        break;
      }
    if (!dup) gens_.push_back(std::move(g));
  }
}

AlgebraicSet AlgebraicSet::full(FieldRef field, int ambient) {
  return AlgebraicSet(std::move(field), VarRoster::canonical(ambient), {});
}

bool AlgebraicSet::contains(const Point& p) const {
  if (static_cast<int>(p.size()) != ambient()) throw DomainError("point dimension mismatch");
  for (const auto& g : gens_)
    if (!g.eval(p).is_zero()) return false;
  return true;
}

const IdealBasis& AlgebraicSet::groebner(Budget* budget) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->gb) cache_->gb = groebner_basis(ideal(), MonomialOrder::grevlex(), budget);
  return *cache_->gb;
}

bool AlgebraicSet::empty_over_closure(Budget* budget) const {
  return contains_one(groebner(budget));
}

bool AlgebraicSet::ideal_equal_to(const AlgebraicSet& o, Budget* budget) const {
  if (!same_ambient(o)) return false;
  if (gens_ == o.gens_) return true;
  for (const auto& g : gens_)
    if (!reduce_mod(g, o.groebner(budget), budget).is_zero()) return false;
  for (const auto& g : o.gens_)
    if (!reduce_mod(g, groebner(budget), budget).is_zero()) return false;
  return true;
}

bool AlgebraicSet::same_ambient(const AlgebraicSet& o) const {
  return same_field(field_, o.field_) && *roster_ == *o.roster_;
}

std::string AlgebraicSet::to_text() const {
  std::string s = "ambient=" + std::to_string(ambient()) + "; field=" + field_->to_string() + "\n";
  s += "piece: {gens: [";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  s += "], neq: 1}\n";
  return s;
}

AlgebraicSet zero_set(std::vector<MultiPoly> gens, int ambient, const FieldRef& field) {
  RosterRef roster = gens.empty() ? VarRoster::canonical(ambient) : gens[0].roster();
  if (static_cast<int>(roster->size()) != ambient)
    throw DomainError("generator variable count does not match ambient dimension");
  return AlgebraicSet(field, roster, std::move(gens));
}

bool LocallyClosedPiece::contains(const Point& p) const {
  return closed.contains(p) && !neq.eval(p).is_zero();
}

ConstructibleSet::ConstructibleSet(FieldRef field, RosterRef roster,
                                   std::vector<LocallyClosedPiece> pieces)
    : field_(std::move(field)), roster_(std::move(roster)) {
  for (auto& pc : pieces) {
    if (!same_field(pc.closed.field(), field_) || !(*pc.closed.roster() == *roster_))
      throw DomainError("piece ambient mismatch");
    if (pc.neq.is_zero()) continue;  // piece with Q = 0 is empty
    if (pc.neq.is_constant()) pc.neq = MultiPoly::constant(field_, roster_, 1);
    bool trivially_empty = false;
    for (const auto& g : pc.closed.gens())
      if (g.is_constant() && !g.is_zero()) trivially_empty = true;
    if (trivially_empty) continue;
    pieces_.push_back(std::move(pc));
  }
}

ConstructibleSet ConstructibleSet::empty(FieldRef field, RosterRef roster) {
  return ConstructibleSet(std::move(field), std::move(roster), {});
}

ConstructibleSet ConstructibleSet::from_closed(const AlgebraicSet& a) {
  return piece(a, MultiPoly::constant(a.field(), a.roster(), 1));
}

ConstructibleSet ConstructibleSet::piece(const AlgebraicSet& closed, const MultiPoly& neq) {
  return ConstructibleSet(closed.field(), closed.roster(), {{closed, neq}});
}

bool ConstructibleSet::contains(const Point& p) const {
  for (const auto& pc : pieces_)
    if (pc.contains(p)) return true;
  return false;
}

std::string ConstructibleSet::to_text() const {
  std::string s = "ambient=" + std::to_string(ambient()) + "; field=" + field_->to_string() + "\n";
  for (const auto& pc : pieces_) {
    s += "piece: {gens: [";
    for (std::size_t i = 0; i < pc.closed.gens().size(); ++i) {
      if (i) s += ", ";
      s += pc.closed.gens()[i].to_string();
    }
    s += "], neq: " + pc.neq.to_string() + "}\n";
  }
  return s;
}

static void check_same_space(const ConstructibleSet& a, const ConstructibleSet& b) {
  if (!same_field(a.field(), b.field()) || !(*a.roster() == *b.roster()))
    throw DomainError("constructible sets live in different ambient spaces");
}

ConstructibleSet cs_union(const ConstructibleSet& a, const ConstructibleSet& b) {
  check_same_space(a, b);
  std::vector<LocallyClosedPiece> pieces = a.pieces();
  pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  return ConstructibleSet(a.field(), a.roster(), std::move(pieces));
}

ConstructibleSet cs_intersect(const ConstructibleSet& a, const ConstructibleSet& b) {
  check_same_space(a, b);
  std::vector<LocallyClosedPiece> pieces;
  for (const auto& pa : a.pieces())
    for (const auto& pb : b.pieces()) {
      std::vector<MultiPoly> gens = pa.closed.gens();
      gens.insert(gens.end(), pb.closed.gens().begin(), pb.closed.gens().end());
      pieces.push_back({AlgebraicSet(a.field(), a.roster(), std::move(gens)), pa.neq * pb.neq});
    }
  return ConstructibleSet(a.field(), a.roster(), std::move(pieces));
}

ConstructibleSet cs_complement(const ConstructibleSet& a) {
  const FieldRef& field = a.field();
  const RosterRef& roster = a.roster();
  MultiPoly one = MultiPoly::constant(field, roster, 1);
  ConstructibleSet acc = ConstructibleSet::from_closed(AlgebraicSet(field, roster, {}));
  for (const auto& pc : a.pieces()) {
    // complement of {I = 0, Q != 0} is (union of special opens g != 0) + Zer(Q)
    std::vector<LocallyClosedPiece> pieces;
    for (const auto& g : pc.closed.gens())
      pieces.push_back({AlgebraicSet(field, roster, {}), g});
    if (!pc.neq.is_constant())
      pieces.push_back({AlgebraicSet(field, roster, {pc.neq}), one});
    acc = cs_intersect(acc, ConstructibleSet(field, roster, std::move(pieces)));
  }
  return acc;
}

AlgebraicSet cs_closure(const ConstructibleSet& a, Budget* budget) {
  const FieldRef& field = a.field();
  const RosterRef& roster = a.roster();
  if (a.pieces().empty())
    return AlgebraicSet(field, roster, {MultiPoly::constant(field, roster, 1)});
  std::optional<IdealBasis> acc;
  for (const auto& pc : a.pieces()) {
    IdealBasis sat = pc.neq.is_constant() ? as_reduced_gb(pc.closed.ideal(), budget)
                                          : ideal_saturate(pc.closed.ideal(), pc.neq, budget);
    acc = acc ? ideal_intersect(*acc, sat, budget) : sat;
  }
  return AlgebraicSet(field, roster, acc->gens);
}

namespace {

// closure(piece) minus the piece itself, as a constructible set
ConstructibleSet piece_boundary_raw(const ConstructibleSet& whole, std::size_t idx, Budget* budget) {
  const auto& pc = whole.pieces()[idx];
  ConstructibleSet piece_cs = ConstructibleSet(whole.field(), whole.roster(), {pc});
  AlgebraicSet zclosed = cs_closure(piece_cs, budget);
  return cs_intersect(ConstructibleSet::from_closed(zclosed), cs_complement(piece_cs));
}

}  // namespace

ConstructibleSet open_dense_core(const ConstructibleSet& c, Budget* budget) {
  if (c.is_null()) throw DomainError("null constructible set");
  // nonemptiness precondition
  bool nonempty = false;
  if (c.field()->is_finite()) {
    nonempty = !enumerate_points(c, budget).empty();
  } else {
    for (const auto& pc : c.pieces())
      if (!contains_one(pc.closed.ideal(), budget)) nonempty = true;
  }
  if (!nonempty) throw DomainError("open_dense_core of an empty set");

  // closure of each piece's boundary, as a closed constructible
  std::vector<ConstructibleSet> boundaries;
  for (std::size_t i = 0; i < c.pieces().size(); ++i) {
    AlgebraicSet b = cs_closure(piece_boundary_raw(c, i, budget), budget);
    boundaries.push_back(ConstructibleSet::from_closed(b));
  }
  std::optional<ConstructibleSet> u;
  for (std::size_t j = 0; j < c.pieces().size(); ++j) {
    ConstructibleSet piece_j(c.field(), c.roster(), {c.pieces()[j]});
    for (std::size_t i = 0; i < c.pieces().size(); ++i) {
      if (i == j) continue;
      piece_j = cs_intersect(piece_j, cs_complement(boundaries[i]));
    }
    u = u ? cs_union(*u, piece_j) : piece_j;
  }
  return *u;
}

RegularMap RegularMap::make_unchecked(AlgebraicSet source, AlgebraicSet target,
                                      std::vector<MultiPoly> components, bool verified) {
  if (components.size() != static_cast<std::size_t>(target.ambient()))
    throw DomainError("component count does not match target ambient dimension");
  for (const auto& p : components) {
    if (!same_field(p.field(), source.field())) throw DomainError("component field mismatch");
    if (!(*p.roster() == *source.roster())) throw DomainError("component roster mismatch");
  }
  if (!same_field(source.field(), target.field())) throw DomainError("source/target field mismatch");
  RegularMap f;
  f.source = std::move(source);
  f.target = std::move(target);
  f.components = std::move(components);
  f.verified = verified;
  return f;
}

RegularMap RegularMap::make(AlgebraicSet source, AlgebraicSet target, std::vector<MultiPoly> components,
                            Budget* budget) {
  RegularMap f = make_unchecked(std::move(source), std::move(target), std::move(components));
  if (f.target.gens().empty()) return f;  // full affine target: containment is vacuous
  if (f.source.field()->is_finite()) {
    for (const Point& p : enumerate_points(f.source, budget)) {
      Point image = f.eval(p);
      if (!f.target.contains(image))
        throw DomainError("map sends source point (" + point_to_string(p) +
                          ") outside the target: (" + point_to_string(image) + ")");
    }
  } else {
    // sufficient symbolic check; failure only downgrades the map
    const IdealBasis& gb = f.source.groebner(budget);
    for (const auto& tg : f.target.gens()) {
      MultiPoly composed = tg.substitute(f.components);
      if (!reduce_mod(composed, gb, budget).is_zero()) {
        f.verified = false;
        break;
      }
    }
  }
  return f;
}

RegularMap RegularMap::identity(const AlgebraicSet& a) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < a.roster()->size(); ++i)
    comps.push_back(MultiPoly::variable(a.field(), a.roster(), i));
  return make_unchecked(a, a, std::move(comps));
}

Point RegularMap::eval(const Point& p) const {
  Point out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.eval(p));
  return out;
}

std::string RegularMap::to_text() const {
  std::string s = "map: ambient " + std::to_string(source.ambient()) + " -> " +
                  std::to_string(target.ambient()) + "; field=" + source.field()->to_string() +
                  (verified ? "" : "; unverified") + "\n";
  s += "components: [";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += ", ";
    s += components[i].to_string();
  }
  s += "]\nsource: " + source.to_text() + "target: " + target.to_text();
  return s;
}

RegularMap map_compose(const RegularMap& g, const RegularMap& f) {
  if (!f.target.same_ambient(g.source) || !f.target.ideal_equal_to(g.source))
    throw DomainError("composition chain mismatch: target of f differs from source of g");
  std::vector<MultiPoly> comps;
  comps.reserve(g.components.size());
  for (const auto& c : g.components) comps.push_back(c.substitute(f.components));
  return RegularMap::make_unchecked(f.source, g.target, std::move(comps), f.verified && g.verified);
}

AlgebraicSet image_closure(const RegularMap& f, Budget* budget) {
  const RosterRef& src = f.source.roster();
  const RosterRef& tgt = f.target.roster();
  // disjoint union roster: target variables get a fresh prefix
  std::string prefix = "_o";
  auto collides = [&](const std::string& pre) {
    for (const auto& n : src->names())
      if (n.rfind(pre, 0) == 0) return true;
    return false;
  };
  while (collides(prefix)) prefix += "_";
  std::vector<std::string> names = src->names();
  for (const auto& n : tgt->names()) names.push_back(prefix + n);
  RosterRef big = VarRoster::make(names);

  std::vector<int> src_map(src->size());
  for (std::size_t i = 0; i < src->size(); ++i) src_map[i] = big->index_of(src->name(i));
  std::vector<std::string> keep;
  std::vector<int> tgt_embed(tgt->size());
  for (std::size_t j = 0; j < tgt->size(); ++j) {
    keep.push_back(prefix + tgt->name(j));
    tgt_embed[j] = big->index_of(keep.back());
  }

  std::vector<MultiPoly> gens;
  for (const auto& g : f.source.gens()) gens.push_back(g.transported(big, src_map));
  for (std::size_t j = 0; j < tgt->size(); ++j) {
    MultiPoly out_var = MultiPoly::variable(f.source.field(), big, tgt_embed[j]);
    gens.push_back(out_var - f.components[j].transported(big, src_map));
  }
  IdealBasis graph = IdealBasis::make(f.source.field(), big, std::move(gens));
  IdealBasis elim = elimination(graph, keep, budget);

  std::vector<int> back(elim.roster->size());
  for (std::size_t j = 0; j < tgt->size(); ++j)
    back[elim.roster->index_of(prefix + tgt->name(j))] = static_cast<int>(j);
  std::vector<MultiPoly> out;
  for (const auto& g : elim.gens) out.push_back(g.transported(tgt, back));
  return AlgebraicSet(f.target.field(), tgt, std::move(out));
}

namespace {

// Row-reduced evaluation matrix used by Buchberger-Moller.
struct LinSolver {
  // rows: reduced vectors with pivot columns
  std::vector<std::vector<FieldElement>> rows;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<FieldElement>> history;  // row ops applied to unit vectors

  // Try to express v in the row span. On success returns coefficients w.r.t.
  // the original inserted vectors; on failure inserts the reduced vector.
  std::optional<std::vector<FieldElement>> reduce_or_insert(std::vector<FieldElement> v,
                                                            const FieldRef& field) {
    std::size_t n = v.size();
    std::vector<FieldElement> combo(history.size(), FieldElement::zero(field));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      FieldElement c = v[pivots[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = v[j] - c * rows[r][j];
      for (std::size_t j = 0; j < history[r].size(); ++j) {
        if (j >= combo.size()) combo.resize(history[r].size(), FieldElement::zero(field));
        combo[j] = combo[j] + c * history[r][j];
      }
    }
    bool zero = true;
    std::size_t pivot = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!v[j].is_zero()) {
        zero = false;
        pivot = j;
        break;
      }
    if (zero) return combo;
    // normalize and insert
    FieldElement inv = v[pivot].inverse();
    for (auto& x : v) x = x * inv;
    // history row: inv * (e_new - combo)
    std::vector<FieldElement> hist(combo.size() + 1, FieldElement::zero(field));
    for (std::size_t j = 0; j < combo.size(); ++j) hist[j] = -(inv * combo[j]);
    hist[combo.size()] = inv;
    rows.push_back(std::move(v));
    pivots.push_back(pivot);
    history.push_back(std::move(hist));
    return std::nullopt;
  }
};

struct BmResult {
  std::vector<MultiPoly> basis_gens;          // reduced GB of the vanishing ideal
  std::vector<std::vector<int>> staircase;    // monomials forming a function basis
  std::vector<std::vector<FieldElement>> combos;  // expression of staircase evals (row ops)
  LinSolver solver;
};

BmResult buchberger_moller(const std::vector<Point>& points, int ambient, const FieldRef& field,
                           Budget* budget) {
  Budget fallback;
  Budget& bud = budget_or(budget, fallback);
  RosterRef roster = VarRoster::canonical(ambient);
  MonomialOrder order = MonomialOrder::grevlex();
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != ambient) throw DomainError("point dimension mismatch");
    for (const auto& c : p)
      if (!same_field(c.field(), field)) throw DomainError("point field mismatch");
  }

  BmResult res;
  std::vector<std::vector<int>> staircase_exps;
  std::vector<std::vector<int>> candidates = {std::vector<int>(ambient, 0)};

  auto eval_mono = [&](const std::vector<int>& e, const Point& p) {
    FieldElement v = FieldElement::one(field);
    for (int i = 0; i < ambient; ++i)
      if (e[i] > 0) v = v * p[i].pow(e[i]);
    return v;
  };
  auto divisible_by_lead = [&](const std::vector<int>& e) {
    for (const auto& g : res.basis_gens) {
      const auto& le = g.leading_term().exps;
      bool div = true;
      for (int i = 0; i < ambient; ++i)
        if (le[i] > e[i]) {
          div = false;
          break;
        }
      if (div) return true;
    }
    return false;
  };

  while (!candidates.empty()) {
    bud.charge(static_cast<long long>(points.size()) + 1, "vanishing_ideal");
    auto it = std::min_element(candidates.begin(), candidates.end(),
                               [&](const auto& a, const auto& b) { return order.compare(a, b) < 0; });
    std::vector<int> t = *it;
    candidates.erase(it);
    if (divisible_by_lead(t)) continue;

    std::vector<FieldElement> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(eval_mono(t, p));
    auto combo = res.solver.reduce_or_insert(std::move(v), field);
    if (combo) {
      // t - sum combo_j * staircase_j vanishes on all points
      std::vector<Term> terms;
      terms.push_back({t, FieldElement::one(field)});
      for (std::size_t j = 0; j < combo->size(); ++j)
        if (!(*combo)[j].is_zero()) terms.push_back({staircase_exps[j], -(*combo)[j]});
      res.basis_gens.push_back(MultiPoly::from_terms(field, roster, std::move(terms), order));
    } else {
      staircase_exps.push_back(t);
      for (int i = 0; i < ambient; ++i) {
        std::vector<int> next = t;
        next[i] += 1;
        if (std::find(candidates.begin(), candidates.end(), next) == candidates.end())
          candidates.push_back(std::move(next));
      }
    }
  }
  res.staircase = std::move(staircase_exps);
  return res;
}

}  // namespace

IdealBasis vanishing_ideal_of_points(const std::vector<Point>& points, int ambient,
                                     const FieldRef& field, Budget* budget) {
  BmResult bm = buchberger_moller(points, ambient, field, budget);
  IdealBasis out = IdealBasis::make(field, VarRoster::canonical(ambient), std::move(bm.basis_gens));
  out.is_reduced_gb = true;
  out.gb_order = MonomialOrder::grevlex();
  return out;
}

MultiPoly interpolate_on_points(const std::vector<Point>& points,
                                const std::vector<FieldElement>& values, int ambient,
                                const FieldRef& field, Budget* budget) {
  if (points.size() != values.size()) throw DomainError("points/values length mismatch");
  BmResult bm = buchberger_moller(points, ambient, field, budget);
  // solve: sum_j c_j * staircase_j(p_i) = values_i. The staircase evaluation
  // vectors span the functions on the points, so reduction must succeed.
  auto combo = bm.solver.reduce_or_insert(values, field);
  if (!combo) throw DomainError("interpolation failed: duplicated points?");
  RosterRef roster = VarRoster::canonical(ambient);
  std::vector<Term> terms;
  for (std::size_t j = 0; j < combo->size(); ++j)
    if (!(*combo)[j].is_zero()) terms.push_back({bm.staircase[j], (*combo)[j]});
  return MultiPoly::from_terms(field, roster, std::move(terms), MonomialOrder::grevlex());
}

}  // namespace aca

#include "aca/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aca {

namespace {

bool exps_divide(const std::vector<int>& d, const std::vector<int>& m) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

std::vector<int> exps_lcm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

std::vector<int> exps_sub(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool exps_equal_sum(const std::vector<int>& l, const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] != a[i] + b[i]) return false;
  return true;
}

MultiPoly times_monomial(const MultiPoly& f, const std::vector<int>& e, const FieldElement& c) {
  std::vector<Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    std::vector<int> ne(t.exps.size());
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] = t.exps[i] + e[i];
    terms.push_back({std::move(ne), t.coeff * c});
  }
  return MultiPoly::from_terms(f.field(), f.roster(), std::move(terms), f.order());
}

}  // namespace

IdealBasis IdealBasis::make(FieldRef field, RosterRef roster, std::vector<MultiPoly> gens) {
  IdealBasis b;
  b.field = std::move(field);
  b.roster = std::move(roster);
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!same_field(g.field(), b.field)) throw DomainError("generator field mismatch");
    if (!(*g.roster() == *b.roster)) throw DomainError("generator roster mismatch");
    b.gens.push_back(std::move(g));
  }
  return b;
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Term& lf = f.leading_term();
  const Term& lg = g.leading_term();
  std::vector<int> l = exps_lcm(lf.exps, lg.exps);
  MultiPoly a = times_monomial(f, exps_sub(l, lf.exps), lf.coeff.inverse());
  MultiPoly b = times_monomial(g, exps_sub(l, lg.exps), lg.coeff.inverse());
  return a - b;
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& G, const MonomialOrder& order,
                      Budget* budget) {
  Budget fallback;
  Budget& bud = budget_or(budget, fallback);
  MultiPoly p = f.order() == order ? f : f.with_order(order);
  std::vector<Term> remainder;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    const MultiPoly* divisor = nullptr;
    for (const auto& g : G) {
      if (!g.is_zero() && exps_divide(g.leading_term().exps, lt.exps)) {
        divisor = &g;
        break;
      }
    }
    bud.charge(1, "normal_form");
    if (divisor) {
      const Term& lg = divisor->leading_term();
      MultiPoly sub = times_monomial(*divisor, exps_sub(lt.exps, lg.exps), lt.coeff / lg.coeff);
      p = p - (sub.order() == p.order() ? sub : sub.with_order(p.order()));
    } else {
      remainder.push_back(lt);
      MultiPoly mono = times_monomial(MultiPoly::constant(p.field(), p.roster(), lt.coeff, p.order()),
                                      lt.exps, FieldElement::one(p.field()));
      p = p - mono;
    }
  }
  return MultiPoly::from_terms(f.field(), f.roster(), std::move(remainder), order);
}

namespace {

// Inter-reduce a basis whose S-polynomials already reduce to zero: drop
// generators with redundant leading monomials, tail-reduce, sort ascending.
std::vector<MultiPoly> reduce_basis(std::vector<MultiPoly> G, const MonomialOrder& order,
                                    Budget& bud) {
  std::sort(G.begin(), G.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return order.compare(a.leading_term().exps, b.leading_term().exps) < 0;
  });
  std::vector<MultiPoly> minimal;
  for (auto& g : G) {
    bool redundant = false;
    for (const auto& h : minimal)
      if (exps_divide(h.leading_term().exps, g.leading_term().exps)) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(std::move(g));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<MultiPoly> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      MultiPoly r = normal_form(minimal[i], others, order, &bud).monic();
      if (!(r == minimal[i])) {
        minimal[i] = std::move(r);
        changed = true;
      }
    }
    // reduction cannot kill a minimal generator's leading term, but guard anyway
    std::erase_if(minimal, [](const MultiPoly& g) { return g.is_zero(); });
  }
  std::sort(minimal.begin(), minimal.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return order.compare(a.leading_term().exps, b.leading_term().exps) < 0;
  });
  return minimal;
}

}  // namespace

IdealBasis groebner_basis(const IdealBasis& gens, const MonomialOrder& order, Budget* budget) {
  Budget fallback;
  Budget& bud = budget_or(budget, fallback);
  if (!order.perm.empty() && order.perm.size() != gens.roster->size())
    throw DomainError("order permutation does not match roster");

  std::vector<MultiPoly> G;
  for (const auto& g : gens.gens)
    if (!g.is_zero()) G.push_back(g.with_order(order).monic());

  struct Pair {
    std::vector<int> lcm;
    std::size_t i, j;
  };
  auto pair_less = [&](const Pair& a, const Pair& b) {
    int c = order.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> queue;
  auto push_pairs_for = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      queue.push_back({exps_lcm(G[i].leading_term().exps, G[n].leading_term().exps), i, n});
    std::sort(queue.begin(), queue.end(), pair_less);
  };
  for (std::size_t n = 1; n < G.size(); ++n)
    for (std::size_t i = 0; i < n; ++i)
      queue.push_back({exps_lcm(G[i].leading_term().exps, G[n].leading_term().exps), i, n});
  std::sort(queue.begin(), queue.end(), pair_less);

  std::set<std::pair<std::size_t, std::size_t>> treated;
  auto is_treated = [&](std::size_t a, std::size_t b) {
    return treated.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!queue.empty()) {
    Pair pr = queue.front();
    queue.erase(queue.begin());
    treated.insert({pr.i, pr.j});
    try {
      bud.charge(1, "groebner");
    } catch (const BudgetError& e) {
      throw BudgetError("groebner (" + std::to_string(G.size()) + " basis elements, " +
                            std::to_string(queue.size()) + " pairs pending)",
                        e.used, e.limit);
    }

    const auto& lmi = G[pr.i].leading_term().exps;
    const auto& lmj = G[pr.j].leading_term().exps;
    if (exps_equal_sum(pr.lcm, lmi, lmj)) continue;  // product criterion
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (exps_divide(G[k].leading_term().exps, pr.lcm) && is_treated(pr.i, k) && is_treated(pr.j, k))
        chain = true;
    }
    if (chain) continue;

    MultiPoly r = normal_form(s_polynomial(G[pr.i], G[pr.j]), G, order, &bud);
    if (!r.is_zero()) {
      G.push_back(r.monic());
      push_pairs_for(G.size() - 1);
    }
  }

  IdealBasis out;
  out.field = gens.field;
  out.roster = gens.roster;
  out.gens = reduce_basis(std::move(G), order, bud);
  out.is_reduced_gb = true;
  out.gb_order = order;
  return out;
}

MultiPoly reduce_mod(const MultiPoly& f, const IdealBasis& gb, Budget* budget) {
  if (!gb.is_reduced_gb) throw DomainError("reduce_mod requires a flagged reduced Groebner basis");
  if (!same_field(f.field(), gb.field) || !(*f.roster() == *gb.roster))
    throw DomainError("polynomial does not live on the basis ring");
  return normal_form(f, gb.gens, gb.gb_order, budget);
}

IdealBasis elimination(const IdealBasis& gens, const std::vector<std::string>& keep, Budget* budget) {
  const RosterRef& roster = gens.roster;
  std::vector<bool> keep_mask(roster->size(), false);
  for (const auto& name : keep) {
    int idx = roster->index_of(name);
    if (idx < 0) throw DomainError("keep variable '" + name + "' not in roster");
    keep_mask[idx] = true;
  }
  std::vector<int> perm;
  for (std::size_t i = 0; i < roster->size(); ++i)
    if (!keep_mask[i]) perm.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < roster->size(); ++i)
    if (keep_mask[i]) perm.push_back(static_cast<int>(i));

  IdealBasis gb = groebner_basis(gens, MonomialOrder::lex_with(perm), budget);

  std::vector<std::string> keep_names;
  for (std::size_t i = 0; i < roster->size(); ++i)
    if (keep_mask[i]) keep_names.push_back(roster->name(i));
  RosterRef keep_roster = VarRoster::make(keep_names);
  std::vector<int> var_map(roster->size(), -1);
  for (std::size_t i = 0; i < roster->size(); ++i)
    if (keep_mask[i]) var_map[i] = keep_roster->index_of(roster->name(i));

  std::vector<MultiPoly> kept;
  for (const auto& g : gb.gens) {
    std::vector<bool> used = g.vars_used();
    bool ok = true;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i] && !keep_mask[i]) ok = false;
    if (ok) kept.push_back(g.transported(keep_roster, var_map, MonomialOrder::lex()));
  }
  IdealBasis out = IdealBasis::make(gens.field, keep_roster, std::move(kept));
  // a reduced lex basis restricted to the trailing block is the reduced basis
  // of the elimination ideal under the induced lex order
  out.is_reduced_gb = true;
  out.gb_order = MonomialOrder::lex();
  return out;
}

namespace {

std::string fresh_name(const RosterRef& roster) {
  for (int i = 0;; ++i) {
    std::string cand = "_s" + std::to_string(i);
    if (roster->index_of(cand) < 0) return cand;
  }
}

}  // namespace

IdealBasis ideal_intersect(const IdealBasis& a, const IdealBasis& b, Budget* budget) {
  if (!same_field(a.field, b.field) || !(*a.roster == *b.roster))
    throw DomainError("ideal intersection needs a common ring");
  // the zero ideal absorbs the intersection
  if (a.gens.empty()) return a;
  if (b.gens.empty()) return b;
  std::string yn = fresh_name(a.roster);
  std::vector<std::string> names = a.roster->names();
  names.push_back(yn);
  RosterRef big = VarRoster::make(names);
  MultiPoly y = MultiPoly::variable(a.field, big, static_cast<std::size_t>(big->index_of(yn)));
  MultiPoly one = MultiPoly::constant(a.field, big, 1);
  std::vector<MultiPoly> gens;
  for (const auto& g : a.gens) gens.push_back(y * g.embedded(big));
  for (const auto& g : b.gens) gens.push_back((one - y) * g.embedded(big));
  return elimination(IdealBasis::make(a.field, big, std::move(gens)), a.roster->names(), budget);
}

IdealBasis ideal_saturate(const IdealBasis& ideal, const MultiPoly& q, Budget* budget) {
  if (!(*q.roster() == *ideal.roster)) throw DomainError("saturation polynomial roster mismatch");
  if (q.is_zero()) {
    // (I : 0^inf) = (1)
    return IdealBasis::make(ideal.field, ideal.roster,
                            {MultiPoly::constant(ideal.field, ideal.roster, 1)});
  }
  std::string yn = fresh_name(ideal.roster);
  std::vector<std::string> names = ideal.roster->names();
  names.push_back(yn);
  RosterRef big = VarRoster::make(names);
  MultiPoly y = MultiPoly::variable(ideal.field, big, static_cast<std::size_t>(big->index_of(yn)));
  MultiPoly one = MultiPoly::constant(ideal.field, big, 1);
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.gens) gens.push_back(g.embedded(big));
  gens.push_back(one - y * q.embedded(big));
  return elimination(IdealBasis::make(ideal.field, big, std::move(gens)), ideal.roster->names(),
                     budget);
}

bool contains_one(const IdealBasis& basis, Budget* budget) {
  const IdealBasis* use = &basis;
  IdealBasis computed;
  if (!basis.is_reduced_gb) {
    computed = groebner_basis(basis, MonomialOrder::grevlex(), budget);
    use = &computed;
  }
  for (const auto& g : use->gens)
    if (g.is_constant() && !g.is_zero()) return true;
  return false;
}

IdealBasis as_reduced_gb(const IdealBasis& basis, Budget* budget) {
  if (basis.is_reduced_gb) return basis;
  return groebner_basis(basis, MonomialOrder::grevlex(), budget);
}

bool ideal_equal(const IdealBasis& a, const IdealBasis& b, Budget* budget) {
  IdealBasis ga = as_reduced_gb(a, budget);
  IdealBasis gb = as_reduced_gb(b, budget);
  for (const auto& g : a.gens)
    if (!reduce_mod(g, gb, budget).is_zero()) return false;
  for (const auto& g : b.gens)
    if (!reduce_mod(g, ga, budget).is_zero()) return false;
  return true;
}

}  // namespace aca

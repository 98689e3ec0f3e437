#include "doctest.h"

#include "aca/automata.hpp"
#include "aca/workbench.hpp"

using namespace aca;

namespace {

MultiPoly rnd_poly(Rng& rng, const FieldRef& field, const RosterRef& roster, int max_deg,
                   int terms) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(roster->size(), 0);
    for (std::size_t v = 0; v < roster->size(); ++v) e[v] = static_cast<int>(rng.below(max_deg + 1));
    ts.push_back({std::move(e), FieldElement::from_index(field, rng.below(field->q))});
  }
  return MultiPoly::from_terms(field, roster, std::move(ts));
}

Pattern rnd_pattern(Rng& rng, const AlgebraicSet& alphabet, const Window& w,
                    const std::vector<Point>& alpha_pts) {
  std::vector<Point> vals;
  for (std::size_t i = 0; i < w.size(); ++i)
    vals.push_back(alpha_pts[rng.below(alpha_pts.size())]);
  return Pattern(alphabet, w, std::move(vals));
}

Pattern line_pattern(const AlgebraicSet& alphabet, long long from, std::vector<long long> vals) {
  std::vector<Cell> cells;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    cells.push_back({from + static_cast<long long>(i)});
    pts.push_back({FieldElement::from_integer(alphabet.field(), vals[i])});
  }
  return Pattern(alphabet, Window(1, cells), pts);
}

CellularAutomaton shift_ca(const FieldRef& field) {
  AlgebraicSet line = AlgebraicSet::full(field, 1);
  Window m(1, {{1}});
  RosterRef blocks = block_roster(m, 1);
  return ca_make(line, m, {MultiPoly::variable(field, blocks, 0)});
}

CellularAutomaton real_quadratic() {
  auto Q = Field::rationals();
  AlgebraicSet line = AlgebraicSet::full(Q, 1);
  Window m(1, {{0}, {1}});
  RosterRef blocks = block_roster(m, 1);
  return ca_make(line, m, {parse_poly("x[1][1] - x[0][1]^2", Q, blocks)});
}

}  // namespace

TEST_CASE("ca_make validates the stated examples") {
  // the shift is a valid algebraic automaton
  CellularAutomaton sh = shift_ca(Field::prime(5));
  CHECK(sh.verified());
  CHECK(sh.memory() == Window(1, {{1}}));

  // the real quadratic rule over Q
  CellularAutomaton rq = real_quadratic();
  CHECK(rq.verified());

  // SL2 difference automaton over F_5: rule from the catalog, validated by
  // enumerating all pairs of determinant-one matrices
  CatalogEntry sl2 = example_catalog("sl2-difference", {{"field", "5"}});
  CellularAutomaton ca = sl2.spec.build();
  CHECK(ca.verified());
  CHECK(ca.alphabet_ambient() == 4);

  // a rule escaping the alphabet is rejected over a finite field
  FieldRef f5 = Field::prime(5);
  RosterRef rt = VarRoster::canonical(1);
  AlgebraicSet two = zero_set({parse_poly("t1^2 - t1", f5, rt)}, 1, f5);
  Window m(1, {{0}});
  RosterRef blocks = block_roster(m, 1);
  CHECK_THROWS_AS(
      ca_make(two, m, {MultiPoly::variable(f5, blocks, 0) + MultiPoly::constant(f5, blocks, 1)}),
      DomainError);
}

TEST_CASE("ca_apply on the stated examples") {
  FieldRef f5 = Field::prime(5);
  CellularAutomaton sh = shift_ca(f5);
  AlgebraicSet line = sh.alphabet();

  Pattern p = line_pattern(line, 0, {1, 2, 3});  // (a,b,c) on {0,1,2}
  Pattern q = ca_apply(sh, p);
  CHECK(q.support() == Window(1, {{0}, {1}}));
  CHECK(q == line_pattern(line, 0, {2, 3}));

  // real quadratic on x = (0,1,2,3): x(n+1) - x(n)^2 by hand = (1, 1, -1)
  CellularAutomaton rq = real_quadratic();
  Pattern x = line_pattern(rq.alphabet(), 0, {0, 1, 2, 3});
  Pattern y = ca_apply(rq, x);
  CHECK(y == line_pattern(rq.alphabet(), 0, {1, 1, -1}));
  CHECK(y.support() == interior(x.support(), rq.memory()));

  // empty interior is an empty pattern, not an error
  Pattern tiny = line_pattern(rq.alphabet(), 0, {7});
  CHECK(ca_apply(rq, tiny).support().size() == 0);
}

TEST_CASE("equivariance: apply commutes with translation") {
  Rng rng(101);
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m(1, {{0}, {1}});
  RosterRef blocks = block_roster(m, 1);
  std::vector<Point> alpha_pts = enumerate_points(line);
  for (int trial = 0; trial < 100; ++trial) {
    CellularAutomaton ca =
        CellularAutomaton::make_unchecked(line, m, {rnd_poly(rng, f5, blocks, 2, 3)});
    Pattern p = rnd_pattern(rng, line, Window::box({-2}, {2}), alpha_pts);
    Cell g = {rng.range(-3, 3)};
    CHECK(ca_apply(ca, p.translated(g)) == ca_apply(ca, p).translated(g));
  }
}

TEST_CASE("ca_truncation: projections, the quadratic map, and the apply oracle") {
  FieldRef f5 = Field::prime(5);
  CellularAutomaton sh = shift_ca(f5);
  RegularMap tr = ca_truncation(sh, Window::box({0}, {1}));
  // shift on E = {0,1}: the coordinate projection to the second cell
  CHECK(tr.target.ambient() == 1);
  CHECK(tr.components[0] ==
        MultiPoly::variable(f5, tr.source.roster(), 1).with_order(tr.components[0].order()));

  CellularAutomaton rq = real_quadratic();
  RegularMap trq = ca_truncation(rq, Window::box({0}, {1}));
  RosterRef er = trq.source.roster();
  CHECK(trq.components[0] == parse_poly("x[1][1] - x[0][1]^2", Field::rationals(), er));

  // pointwise agreement with ca_apply on 200 random F_7 patterns
  Rng rng(303);
  FieldRef f7 = Field::prime(7);
  AlgebraicSet line = AlgebraicSet::full(f7, 1);
  Window m(1, {{0}, {1}});
  RosterRef blocks = block_roster(m, 1);
  std::vector<Point> alpha_pts = enumerate_points(line);
  for (int trial = 0; trial < 200; ++trial) {
    CellularAutomaton ca =
        CellularAutomaton::make_unchecked(line, m, {rnd_poly(rng, f7, blocks, 2, 3)});
    int len = 2 + static_cast<int>(rng.below(4));  // |E| up to 5
    Window e = Window::box({0}, {len});
    Pattern p = rnd_pattern(rng, line, e, alpha_pts);
    RegularMap t = ca_truncation(ca, e);
    Pattern direct = ca_apply(ca, p);
    Point image = t.eval(product_point_from_pattern(p));
    CHECK(pattern_from_product_point(line, direct.support(), image) == direct);
  }
}

TEST_CASE("ca_compose: shifts, sumsets, and the sequential oracle") {
  FieldRef f5 = Field::prime(5);
  CellularAutomaton sh = shift_ca(f5);
  CellularAutomaton sh2 = ca_compose(sh, sh);
  CHECK(sh2.memory() == Window(1, {{2}}));  // sumset {1}+{1}

  // sumset of {0,1} with {0,1}
  Window m01(1, {{0}, {1}});
  CHECK(m01.sumset(m01) == Window(1, {{0}, {1}, {2}}));

  Rng rng(404);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  RosterRef blocks = block_roster(m01, 1);
  std::vector<Point> alpha_pts = enumerate_points(line);
  for (int trial = 0; trial < 25; ++trial) {
    CellularAutomaton sigma =
        CellularAutomaton::make_unchecked(line, m01, {rnd_poly(rng, f5, blocks, 2, 3)});
    CellularAutomaton tau =
        CellularAutomaton::make_unchecked(line, m01, {rnd_poly(rng, f5, blocks, 2, 3)});
    CellularAutomaton comp = ca_compose(sigma, tau);
    CHECK(comp.memory() == Window(1, {{0}, {1}, {2}}));
    for (int rep = 0; rep < 8; ++rep) {
      Pattern p = rnd_pattern(rng, line, Window::box({0}, {5}), alpha_pts);
      CHECK(ca_apply(comp, p) == ca_apply(sigma, ca_apply(tau, p)));
    }
  }
}

TEST_CASE("ca_compose is associative at the pattern level") {
  Rng rng(505);
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m01(1, {{0}, {1}});
  RosterRef blocks = block_roster(m01, 1);
  std::vector<Point> alpha_pts = enumerate_points(line);
  for (int trial = 0; trial < 5; ++trial) {
    CellularAutomaton a =
        CellularAutomaton::make_unchecked(line, m01, {rnd_poly(rng, f5, blocks, 1, 3)});
    CellularAutomaton b =
        CellularAutomaton::make_unchecked(line, m01, {rnd_poly(rng, f5, blocks, 1, 3)});
    CellularAutomaton c =
        CellularAutomaton::make_unchecked(line, m01, {rnd_poly(rng, f5, blocks, 1, 3)});
    CellularAutomaton left = ca_compose(ca_compose(a, b), c);
    CellularAutomaton right = ca_compose(a, ca_compose(b, c));
    CHECK(left.memory() == right.memory());
    for (int rep = 0; rep < 5; ++rep) {
      Pattern p = rnd_pattern(rng, line, Window::box({0}, {6}), alpha_pts);
      CHECK(ca_apply(left, p) == ca_apply(right, p));
    }
  }
}

TEST_CASE("minimal memory: the Frobenius-trap rule, the shift, constants") {
  for (long long q : {2LL, 3LL, 5LL}) {
    FieldRef f = Field::prime(q);
    AlgebraicSet line = AlgebraicSet::full(f, 1);
    Window m(1, {{0}, {1}});
    RosterRef blocks = block_roster(m, 1);
    // x1 + x0^q - x0 is functionally just x1
    MultiPoly rule = MultiPoly::variable(f, blocks, 1) +
                     MultiPoly::variable(f, blocks, 0).pow(static_cast<int>(q)) -
                     MultiPoly::variable(f, blocks, 0);
    CellularAutomaton ca = CellularAutomaton::make_unchecked(line, m, {rule});
    MinimalMemoryResult res = ca_minimal_memory(ca);
    CHECK(res.minimal_memory == Window(1, {{1}}));
    // exhaustive dependence oracle agrees
    CHECK(!ca_depends_on_cell(ca, {0}));
    CHECK(ca_depends_on_cell(ca, {1}));
    // the minimized automaton acts identically on the common support
    std::vector<Point> alpha_pts = enumerate_points(line);
    Rng rng(q);
    Pattern p = rnd_pattern(rng, line, Window::box({0}, {4}), alpha_pts);
    Pattern full = ca_apply(ca, p);
    CHECK(ca_apply(res.automaton, p).restricted(full.support()) == full);
  }

  CellularAutomaton sh = shift_ca(Field::prime(5));
  CHECK(ca_minimal_memory(sh).minimal_memory == Window(1, {{1}}));

  // constant rule: empty minimal memory
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m(1, {{0}, {1}});
  RosterRef blocks = block_roster(m, 1);
  CellularAutomaton constant =
      CellularAutomaton::make_unchecked(line, m, {MultiPoly::constant(f5, blocks, 3)});
  MinimalMemoryResult res = ca_minimal_memory(constant);
  CHECK(res.minimal_memory.size() == 0);
  CHECK(!ca_depends_on_cell(constant, {0}));
  CHECK(!ca_depends_on_cell(constant, {1}));
  // the constant automaton still applies: output fills the window
  Pattern p = line_pattern(line, 0, {1, 2, 4});
  Pattern out = ca_apply(res.automaton, p);
  CHECK(out.support() == p.support());
  for (const auto& v : out.values()) CHECK(v[0] == FieldElement::from_integer(f5, 3));
}

TEST_CASE("memory-set independence: padding preserves regularity and the function") {
  Rng rng(606);
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m(1, {{0}, {1}});
  Window padded(1, {{-1}, {0}, {1}, {2}});
  RosterRef blocks = block_roster(m, 1);
  RosterRef padded_blocks = block_roster(padded, 1);
  std::vector<Point> alpha_pts = enumerate_points(line);
  for (int trial = 0; trial < 10; ++trial) {
    MultiPoly rule = rnd_poly(rng, f5, blocks, 2, 3);
    // mu_{M'} = mu_M o projection: transport the rule onto the padded roster
    std::vector<int> var_map = {static_cast<int>(padded.index_of({0})),
                                static_cast<int>(padded.index_of({1}))};
    MultiPoly padded_rule = rule.transported(padded_blocks, var_map);
    CellularAutomaton ca = CellularAutomaton::make_unchecked(line, m, {rule});
    CellularAutomaton cap = CellularAutomaton::make_unchecked(line, padded, {padded_rule});
    CHECK(cap.verified());
    // functional equality: the padded automaton minimizes back to the core
    MinimalMemoryResult res = ca_minimal_memory(cap);
    CHECK(res.minimal_memory.subset_of(m));
    for (int rep = 0; rep < 10; ++rep) {
      Pattern p = rnd_pattern(rng, line, Window::box({-2}, {3}), alpha_pts);
      Pattern a = ca_apply(ca, p);
      Pattern b = ca_apply(cap, p);
      CHECK(b == a.restricted(b.support()));
    }
  }
}

TEST_CASE("local rule recovery is independent of the extension used") {
  // evaluating the automaton on any configuration extending a fixed pattern
  // on M gives the same center value
  Rng rng(707);
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m(1, {{0}, {1}});
  RosterRef blocks = block_roster(m, 1);
  std::vector<Point> alpha_pts = enumerate_points(line);
  for (int trial = 0; trial < 100; ++trial) {
    CellularAutomaton ca =
        CellularAutomaton::make_unchecked(line, m, {rnd_poly(rng, f5, blocks, 2, 3)});
    Pattern core = rnd_pattern(rng, line, m, alpha_pts);
    // two different extensions agreeing on M
    Window big = Window::box({-1}, {2});
    Pattern ext1 = rnd_pattern(rng, line, big, alpha_pts);
    Pattern ext2 = rnd_pattern(rng, line, big, alpha_pts);
    auto patch = [&](Pattern ext) {
      std::vector<Point> vals;
      for (const auto& c : big.cells())
        vals.push_back(m.contains(c) ? core.value_at(c) : ext.value_at(c));
      return Pattern(line, big, vals);
    };
    Point v1 = ca_apply(ca, patch(ext1)).value_at({0});
    Point v2 = ca_apply(ca, patch(ext2)).value_at({0});
    CHECK(compare_points(v1, v2) == 0);
  }
}

TEST_CASE("restriction and induction") {
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m(1, {{2}});
  RosterRef blocks = block_roster(m, 1);
  CellularAutomaton ca =
      CellularAutomaton::make_unchecked(line, m, {MultiPoly::variable(f5, blocks, 0)});

  Sublattice h = Sublattice::scaled(1, 2);
  CellularAutomaton restricted = ca_change_group(ca, h, GroupChange::Restrict);
  CHECK(restricted.memory() == Window(1, {{1}}));  // 2 in H-coordinates

  // rule polynomials transport verbatim (same block shape, relabelled)
  CHECK(restricted.rule().components[0].terms().size() == 1);

  // memory outside the sublattice is rejected
  CellularAutomaton sh = shift_ca(f5);
  CHECK_THROWS_AS(ca_change_group(sh, h, GroupChange::Restrict), DomainError);

  // round trip: induce then restrict
  Rng rng(808);
  Window m2(1, {{1}, {2}});
  RosterRef blocks2 = block_roster(m2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    CellularAutomaton base =
        CellularAutomaton::make_unchecked(line, m2, {rnd_poly(rng, f5, blocks2, 2, 3)});
    long long n = rng.range(1, 3);
    Sublattice hn = Sublattice::scaled(1, n);
    CellularAutomaton induced = ca_change_group(base, hn, GroupChange::Induce);
    CellularAutomaton back = ca_change_group(induced, hn, GroupChange::Restrict);
    CHECK(back.memory() == base.memory());
    for (int j = 0; j < 1; ++j)
      CHECK(back.rule().components[j] == base.rule().components[j]);
  }

  // 2-D restriction onto a rank-1 sublattice
  AlgebraicSet line2d = AlgebraicSet::full(f5, 1);
  Window m2d(2, {{2, 4}});
  RosterRef blocks2d = block_roster(m2d, 1);
  CellularAutomaton ca2 =
      CellularAutomaton::make_unchecked(line2d, m2d, {MultiPoly::variable(f5, blocks2d, 0)});
  Sublattice diag(2, {{1, 2}});
  CellularAutomaton down = ca_change_group(ca2, diag, GroupChange::Restrict);
  CHECK(down.dim() == 1);
  CHECK(down.memory() == Window(1, {{2}}));
}

TEST_CASE("periodic quotient maps") {
  FieldRef f5 = Field::prime(5);
  CellularAutomaton sh = shift_ca(f5);
  Sublattice h3 = Sublattice::scaled(1, 3);
  RegularMap tmap = ca_periodic_map(sh, h3);
  // the shift becomes the cyclic permutation of A^3
  CHECK(tmap.source.ambient() == 3);
  for (const Point& y : enumerate_points(tmap.source)) {
    Point img = tmap.eval(y);
    CHECK(img[0] == y[1]);
    CHECK(img[1] == y[2]);
    CHECK(img[2] == y[0]);
  }

  // identity automaton gives the identity map
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m0(1, {{0}});
  RosterRef blocks = block_roster(m0, 1);
  CellularAutomaton ident =
      CellularAutomaton::make_unchecked(line, m0, {MultiPoly::variable(f5, blocks, 0)});
  RegularMap imap = ca_periodic_map(ident, Sublattice::scaled(1, 2));
  for (const Point& y : enumerate_points(imap.source))
    CHECK(compare_points(imap.eval(y), y) == 0);

  // infinite index rejected
  CHECK_THROWS_AS(ca_periodic_map(sh, Sublattice(1, {})), DomainError);
}

TEST_CASE("conjugation identity and compatibility with composition") {
  Rng rng(909);
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m(1, {{0}, {1}});
  RosterRef blocks = block_roster(m, 1);
  Sublattice h = Sublattice::scaled(1, 2);

  for (int trial = 0; trial < 5; ++trial) {
    CellularAutomaton tau =
        CellularAutomaton::make_unchecked(line, m, {rnd_poly(rng, f5, blocks, 2, 3)});
    RegularMap tmap = ca_periodic_map(tau, h);
    // rho_H^* o tilde(tau)_H = tau o rho_H^* at every point
    for (const Point& y : enumerate_points(tmap.source)) {
      PeriodicConfiguration conf = periodic_from_product_point(tau, h, y);
      PeriodicConfiguration image_conf = periodic_from_product_point(tau, h, tmap.eval(y));
      Window probe = Window::box({-3}, {4});
      Pattern lhs = image_conf.pattern_on(interior(probe, tau.memory()));
      Pattern rhs = ca_apply(tau, conf.pattern_on(probe));
      CHECK(lhs == rhs);
    }

    // (sigma o tau)~_H = sigma~_H o tau~_H pointwise
    CellularAutomaton sigma =
        CellularAutomaton::make_unchecked(line, m, {rnd_poly(rng, f5, blocks, 2, 3)});
    RegularMap smap = ca_periodic_map(sigma, h);
    RegularMap cmap = ca_periodic_map(ca_compose(sigma, tau), h);
    for (const Point& y : enumerate_points(tmap.source))
      CHECK(compare_points(cmap.eval(y), smap.eval(tmap.eval(y))) == 0);
  }
}

TEST_CASE("surjunctivity evidence and counterexamples") {
  // affine rule over F_5: bijective on every tested sublattice
  CatalogEntry aff = example_catalog("affine", {{"field", "5"}});
  CellularAutomaton ca = aff.spec.build();
  std::vector<Sublattice> lattices;
  for (int n = 1; n <= 4; ++n) lattices.push_back(Sublattice::scaled(1, n));
  SurjunctivityReport rep = surjunctivity_check(ca, lattices, 1);
  CHECK(rep.injective_everywhere);
  CHECK(rep.surjective_everywhere);
  for (const auto& e : rep.entries) CHECK(!e.collision);

  // identity automaton: bijective for all H
  FieldRef f5 = Field::prime(5);
  AlgebraicSet line = AlgebraicSet::full(f5, 1);
  Window m0(1, {{0}});
  RosterRef blocks = block_roster(m0, 1);
  CellularAutomaton ident =
      CellularAutomaton::make_unchecked(line, m0, {MultiPoly::variable(f5, blocks, 0)});
  CHECK(surjunctivity_check(ident, lattices, 1).injective_everywhere);

  // x0 + x1 over F_2: the two constants collide on H = 2Z
  FieldRef f2 = Field::prime(2);
  AlgebraicSet line2 = AlgebraicSet::full(f2, 1);
  Window m01(1, {{0}, {1}});
  RosterRef blocks2 = block_roster(m01, 1);
  CellularAutomaton xor_ca = CellularAutomaton::make_unchecked(
      line2, m01, {MultiPoly::variable(f2, blocks2, 0) + MultiPoly::variable(f2, blocks2, 1)});
  SurjunctivityReport bad = surjunctivity_check(xor_ca, {Sublattice::scaled(1, 2)}, 1);
  CHECK(!bad.injective_everywhere);
  REQUIRE(bad.entries[0].collision.has_value());
  const auto& [u, v] = *bad.entries[0].collision;
  // colliding configurations really collide under the automaton
  Window probe = Window::box({-2}, {3});
  Pattern pu = u.pattern_on(probe), pv = v.pattern_on(probe);
  CHECK(!(pu == pv));
  CHECK(ca_apply(xor_ca, pu) == ca_apply(xor_ca, pv));
}

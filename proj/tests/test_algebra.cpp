#include "doctest.h"

#include "aca/enumerate.hpp"
#include "aca/groebner.hpp"

using namespace aca;

namespace {

MultiPoly rnd_poly(Rng& rng, const FieldRef& field, const RosterRef& roster, int max_deg,
                   int terms) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(roster->size(), 0);
    for (std::size_t v = 0; v < roster->size(); ++v) e[v] = static_cast<int>(rng.below(max_deg + 1));
    FieldElement c = field->is_finite() ? FieldElement::from_index(field, rng.below(field->q))
                                        : FieldElement::from_integer(field, rng.range(-6, 6));
    ts.push_back({std::move(e), std::move(c)});
  }
  return MultiPoly::from_terms(field, roster, std::move(ts));
}

Point rnd_point(Rng& rng, const FieldRef& field, int m) {
  Point p;
  for (int i = 0; i < m; ++i)
    p.push_back(field->is_finite() ? FieldElement::from_index(field, rng.below(field->q))
                                   : FieldElement::from_integer(field, rng.range(-9, 9)));
  return p;
}

}  // namespace

TEST_CASE("field descriptors validate their invariants") {
  CHECK_THROWS_AS(Field::prime(4), DomainError);
  CHECK_THROWS_AS(Field::prime(1), DomainError);
  CHECK(Field::prime(2)->q == 2);
  // x^2+2x+1 = (x+1)^2 over F_3 is reducible
  CHECK_THROWS_AS(Field::extension(3, 2, {1, 2, 1}), DomainError);
  // x^2+1 is irreducible over F_3 but splits over F_5
  CHECK(Field::extension(3, 2, {1, 0, 1})->q == 9);
  CHECK_THROWS_AS(Field::extension(5, 2, {1, 0, 1}), DomainError);
  // non-monic rejected
  CHECK_THROWS_AS(Field::extension(3, 2, {1, 0, 2}), DomainError);
  CHECK(Field::parse("Q")->is_rationals());
  CHECK(Field::parse("7")->p == 7);
  CHECK(Field::parse("2^3")->q == 8);
  CHECK(Field::parse("2^2:1,1,1")->q == 4);
}

TEST_CASE("rational elements stay reduced, finite elements stay residues") {
  auto Q = Field::rationals();
  FieldElement half = FieldElement::from_mpq(Q, mpq_class(2, 4));
  CHECK(half.rational().get_num() == 1);
  CHECK(half.rational().get_den() == 2);
  FieldElement neg = FieldElement::from_mpq(Q, mpq_class(3, -6));
  CHECK(neg.rational().get_den() == 2);  // canonical positive denominator
  CHECK(neg.rational().get_num() == -1);

  auto F7 = Field::prime(7);
  CHECK(FieldElement::from_integer(F7, -1) == FieldElement::from_integer(F7, 6));
  for (long long x = 1; x < 7; ++x) {
    FieldElement e = FieldElement::from_integer(F7, x);
    CHECK((e * e.inverse()).is_one());
  }
}

TEST_CASE("extension field arithmetic: Fermat and inverses, exhaustively") {
  for (auto [p, k] : {std::pair<long long, int>{2, 3}, {3, 2}, {2, 4}}) {
    FieldRef f = Field::extension_default(p, k);
    unsigned long long q = f->q;
    for (unsigned long long i = 0; i < q; ++i) {
      FieldElement e = FieldElement::from_index(f, i);
      CHECK(e.pow(static_cast<long long>(q)) == e);  // x^q = x
      if (!e.is_zero()) CHECK((e * e.inverse()).is_one());
      CHECK(FieldElement::from_index(f, e.index()) == e);
    }
  }
}

TEST_CASE("poly_eval matches the stated examples") {
  auto Q = Field::rationals();
  auto F7 = Field::prime(7);

  // zero polynomial evaluates to zero
  RosterRef r1 = VarRoster::canonical(1);
  MultiPoly zero = MultiPoly::zero(Q, r1);
  CHECK(zero.eval({FieldElement::from_integer(Q, 12)}).is_zero());

  // x^3 at 3 over F_7 (27 mod 7 = 6, by hand)
  MultiPoly cube = parse_poly("x^3", F7, VarRoster::make({"x"}));
  CHECK(cube.eval({FieldElement::from_integer(F7, 3)}) == FieldElement::from_integer(F7, 6));

  // t1^2 - t2^3 composed with the cusp parametrization vanishes at x = 2
  RosterRef rt = VarRoster::canonical(2);
  RosterRef rx = VarRoster::make({"x"});
  MultiPoly f = parse_poly("t1^2 - t2^3", Q, rt);
  MultiPoly sub = f.substitute({parse_poly("x^3", Q, rx), parse_poly("x^2", Q, rx)});
  CHECK(sub.is_zero());
  CHECK(sub.eval({FieldElement::from_integer(Q, 2)}).is_zero());

  // dimension + field mismatches are rejected
  CHECK_THROWS_AS(cube.eval({}), DomainError);
  CHECK_THROWS_AS(cube.eval({FieldElement::from_integer(Q, 1)}), DomainError);
}

TEST_CASE("poly_substitute: identity, cusp collapse, expansion") {
  auto Q = Field::rationals();
  RosterRef rt = VarRoster::canonical(1);
  MultiPoly t1 = MultiPoly::variable(Q, rt, 0);
  CHECK(t1.substitute({t1}) == t1);

  RosterRef r2 = VarRoster::canonical(2);
  RosterRef ru = VarRoster::make({"u"});
  MultiPoly s = parse_poly("t1 + t2", Q, r2);
  MultiPoly expanded = s.substitute({parse_poly("u^2", Q, ru), parse_poly("u", Q, ru)});
  CHECK(expanded == parse_poly("u^2 + u", Q, ru));

  CHECK_THROWS_AS(s.substitute({parse_poly("u", Q, ru)}), DomainError);
}

TEST_CASE("groebner_basis on the stated examples") {
  auto Q = Field::rationals();
  RosterRef rx = VarRoster::make({"x"});
  IdealBasis one_var = IdealBasis::make(Q, rx, {parse_poly("x", Q, rx)});
  IdealBasis gb = groebner_basis(one_var, MonomialOrder::lex());
  REQUIRE(gb.gens.size() == 1);
  CHECK(gb.gens[0] == parse_poly("x", Q, rx).with_order(MonomialOrder::lex()));

  // monomial ideals are their own reduced basis
  RosterRef rxy = VarRoster::make({"x", "y"});
  std::vector<MultiPoly> monos = {parse_poly("x^2", Q, rxy), parse_poly("x*y", Q, rxy),
                                  parse_poly("y^2", Q, rxy)};
  IdealBasis mono_gb = groebner_basis(IdealBasis::make(Q, rxy, monos), MonomialOrder::grevlex());
  REQUIRE(mono_gb.gens.size() == 3);
  for (const auto& m : monos) CHECK(reduce_mod(m, mono_gb).is_zero());
  for (const auto& g : mono_gb.gens) CHECK(g.terms().size() == 1);
}

TEST_CASE("elimination realizes the cusp image ideal") {
  auto Q = Field::rationals();
  RosterRef r = VarRoster::make({"s", "a1", "a2"});
  IdealBasis graph = IdealBasis::make(
      Q, r, {parse_poly("a1 - s^3", Q, r), parse_poly("a2 - s^2", Q, r)});
  IdealBasis elim = elimination(graph, {"a1", "a2"});
  MultiPoly cusp = parse_poly("a1^2 - a2^3", Q, elim.roster);
  CHECK(reduce_mod(cusp, elim).is_zero());
  // and conversely every eliminated generator lies in (a1^2 - a2^3)
  IdealBasis cusp_gb =
      groebner_basis(IdealBasis::make(Q, elim.roster, {cusp}), MonomialOrder::grevlex());
  for (const auto& g : elim.gens) CHECK(reduce_mod(g, cusp_gb).is_zero());

  // membership double-checked by evaluation on the parametrized curve
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    FieldElement t = FieldElement::from_integer(Q, rng.range(-10, 10));
    Point p = {t.pow(3), t.pow(2)};
    for (const auto& g : elim.gens) CHECK(g.eval(p).is_zero());
  }
}

TEST_CASE("elimination edge cases") {
  auto Q = Field::rationals();
  RosterRef rxy = VarRoster::make({"x", "y"});
  IdealBasis line = IdealBasis::make(Q, rxy, {parse_poly("x - y", Q, rxy)});
  CHECK(elimination(line, {"y"}).gens.empty());  // projection of a line is everything

  RosterRef rx = VarRoster::make({"x"});
  IdealBasis bad =
      IdealBasis::make(Q, rx, {parse_poly("x", Q, rx), parse_poly("x + 1", Q, rx)});
  IdealBasis empty_keep = elimination(bad, {});
  REQUIRE(empty_keep.gens.size() == 1);
  CHECK(empty_keep.gens[0].is_constant());
  CHECK(contains_one(empty_keep));
}

TEST_CASE("reduce_mod: membership, remainders, flag enforcement") {
  auto Q = Field::rationals();
  RosterRef rx = VarRoster::make({"x"});
  IdealBasis raw = IdealBasis::make(Q, rx, {parse_poly("x", Q, rx)});
  CHECK_THROWS_AS(reduce_mod(parse_poly("x^2+x", Q, rx), raw), DomainError);

  IdealBasis gb = groebner_basis(raw, MonomialOrder::lex());
  CHECK(reduce_mod(parse_poly("x^2 + x", Q, rx), gb).is_zero());
  MultiPoly rem = reduce_mod(parse_poly("x^2 + 1", Q, rx), gb);
  CHECK(rem == parse_poly("1", Q, rx).with_order(MonomialOrder::lex()));
}

TEST_CASE("ring laws and evaluation homomorphism on random polynomials") {
  Rng rng(2026);
  for (FieldRef field : {Field::prime(5), Field::rationals()}) {
    RosterRef r = VarRoster::canonical(3);
    for (int trial = 0; trial < 40; ++trial) {
      MultiPoly f = rnd_poly(rng, field, r, 4, 4);
      MultiPoly g = rnd_poly(rng, field, r, 4, 4);
      MultiPoly h = rnd_poly(rng, field, r, 4, 4);
      CHECK((f + g) + h == f + (g + h));
      CHECK(f * g == g * f);
      CHECK(f * (g + h) == f * g + f * h);
    }
    for (int trial = 0; trial < 100; ++trial) {
      MultiPoly f = rnd_poly(rng, field, r, 3, 3);
      MultiPoly g = rnd_poly(rng, field, r, 3, 3);
      Point a = rnd_point(rng, field, 3);
      CHECK((f * g).eval(a) == f.eval(a) * g.eval(a));
      CHECK((f + g).eval(a) == f.eval(a) + g.eval(a));
    }
  }
}

TEST_CASE("groebner correctness: S-polynomials and inputs reduce to zero") {
  Rng rng(11);
  FieldRef f5 = Field::prime(5);
  RosterRef r = VarRoster::canonical(2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<MultiPoly> gens = {rnd_poly(rng, f5, r, 3, 3), rnd_poly(rng, f5, r, 3, 3),
                                   rnd_poly(rng, f5, r, 2, 2)};
    IdealBasis gb = groebner_basis(IdealBasis::make(f5, r, gens), MonomialOrder::grevlex());
    for (std::size_t i = 0; i < gb.gens.size(); ++i) {
      CHECK(gb.gens[i].leading_term().coeff.is_one());
      for (std::size_t j = i + 1; j < gb.gens.size(); ++j)
        CHECK(reduce_mod(s_polynomial(gb.gens[i], gb.gens[j]), gb).is_zero());
    }
    for (const auto& g : gens)
      if (!g.is_zero()) CHECK(reduce_mod(g, gb).is_zero());
  }
}

TEST_CASE("normal-form soundness: ideal members vanish on the enumerated variety") {
  Rng rng(23);
  for (long long q : {5LL, 7LL}) {
    FieldRef f = Field::prime(q);
    RosterRef r = VarRoster::canonical(3);
    std::vector<MultiPoly> gens = {rnd_poly(rng, f, r, 2, 3), rnd_poly(rng, f, r, 2, 2)};
    IdealBasis gb = groebner_basis(IdealBasis::make(f, r, gens), MonomialOrder::grevlex());
    AlgebraicSet variety(f, r, gens);
    std::vector<Point> pts = enumerate_points(variety);
    for (int trial = 0; trial < 10; ++trial) {
      MultiPoly member = gens[0] * rnd_poly(rng, f, r, 2, 2) + gens[1] * rnd_poly(rng, f, r, 2, 2);
      REQUIRE(reduce_mod(member, gb).is_zero());
      for (const auto& p : pts) CHECK(member.eval(p).is_zero());
    }
  }
}

TEST_CASE("functional normal form") {
  FieldRef f3 = Field::prime(3);
  RosterRef rx = VarRoster::make({"x"});
  CHECK(functional_normal_form(parse_poly("x^3", f3, rx)) == parse_poly("x", f3, rx));

  FieldRef f4 = Field::extension_default(2, 2);
  RosterRef rxy = VarRoster::make({"x", "y"});
  CHECK(functional_normal_form(parse_poly("x^4 + y", f4, rxy)) == parse_poly("x + y", f4, rxy));

  FieldRef f5 = Field::prime(5);
  MultiPoly sq = parse_poly("x^2", f5, rx);
  CHECK(functional_normal_form(sq) == sq);  // already reduced

  CHECK_THROWS_AS(functional_normal_form(parse_poly("x^2", Field::rationals(), rx)), DomainError);

  // agreement with the original at every point, exhaustively
  Rng rng(5);
  for (FieldRef field : {Field::prime(5), Field::extension_default(3, 2)}) {
    RosterRef r = VarRoster::canonical(2);
    for (int trial = 0; trial < 10; ++trial) {
      MultiPoly f = rnd_poly(rng, field, r, 2 * static_cast<int>(field->q), 4);
      MultiPoly nf = functional_normal_form(f);
      for (const auto& t : nf.terms())
        for (int e : t.exps) CHECK(e < static_cast<int>(field->q));
      for (unsigned long long i = 0; i < field->q * field->q; ++i) {
        Point p = point_from_index(field, 2, i);
        CHECK(f.eval(p) == nf.eval(p));
      }
    }
  }
}

TEST_CASE("work budget exhaustion is distinct from mathematical failure") {
  Rng rng(99);
  FieldRef f5 = Field::prime(5);
  RosterRef r = VarRoster::canonical(3);
  std::vector<MultiPoly> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(rnd_poly(rng, f5, r, 3, 4));
  Budget tiny(5);
  CHECK_THROWS_AS(groebner_basis(IdealBasis::make(f5, r, gens), MonomialOrder::lex(), &tiny),
                  BudgetError);
  try {
    Budget tiny2(5);
    groebner_basis(IdealBasis::make(f5, r, gens), MonomialOrder::lex(), &tiny2);
  } catch (const BudgetError& e) {
    CHECK(e.stage.find("groebner") != std::string::npos);
    CHECK(e.used > 0);
  }
}

TEST_CASE("polynomial text round trips and reports error positions") {
  Rng rng(31);
  for (FieldRef field : {Field::prime(7), Field::rationals(), Field::extension_default(2, 2)}) {
    RosterRef r = VarRoster::make({"x", "y"});
    for (int trial = 0; trial < 20; ++trial) {
      MultiPoly f = rnd_poly(rng, field, r, 3, 4);
      CHECK(parse_poly(f.to_string(), field, r) == f);
    }
  }
  auto Q = Field::rationals();
  RosterRef r = VarRoster::make({"x"});
  CHECK(parse_poly("  x ^ 2 -  1/2 ", Q, r) == parse_poly("x^2-1/2", Q, r));
  CHECK_THROWS_AS(parse_poly("x^y", Q, r), ParseError);
  try {
    parse_poly("x^y", Q, r);
  } catch (const ParseError& e) {
    CHECK(e.col == 3);
  }
  CHECK_THROWS_AS(parse_poly("x + z", Q, r), ParseError);
  CHECK_THROWS_AS(parse_scalar("x", Q), ParseError);

  // extension generator w is a scalar, not a variable
  FieldRef f9 = Field::extension_default(3, 2);
  FieldElement w = parse_scalar("w^2 + w", f9);
  CHECK(w == FieldElement::generator(f9).pow(2) + FieldElement::generator(f9));
}

TEST_CASE("monomial orders: lex vs grevlex leading terms") {
  auto Q = Field::rationals();
  RosterRef r = VarRoster::make({"x", "y"});
  MultiPoly f = parse_poly("x*y^2 + x^2", Q, r);
  // grevlex: total degree 3 term wins
  CHECK(f.leading_term().exps == std::vector<int>{1, 2});
  MultiPoly lex = f.with_order(MonomialOrder::lex());
  // lex with x most significant: x^2 wins
  CHECK(lex.leading_term().exps == std::vector<int>{2, 0});
}

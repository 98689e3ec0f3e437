#include "doctest.h"

#include "aca/lattice.hpp"

using namespace aca;

TEST_CASE("interior on the stated examples") {
  Window e = Window::box({0}, {3});          // {0,1,2,3}
  Window m(1, {{0}, {1}});
  Window f = interior(e, m);
  CHECK(f == Window(1, {{0}, {1}, {2}}));

  CHECK(interior(e, Window(1, {{0}})) == e);  // identity memory

  Window tiny = Window::box({0}, {0});
  CHECK(interior(tiny, m).size() == 0);  // too small
}

TEST_CASE("interior is antitone in M and monotone in E") {
  Window e1 = Window::box({-2, -2}, {2, 2});
  Window e2 = Window::box({-3, -3}, {3, 3});
  Window m1(2, {{0, 0}, {1, 0}});
  Window m2(2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(interior(e1, m2).subset_of(interior(e1, m1)));  // bigger M, smaller interior
  CHECK(interior(e1, m1).subset_of(interior(e2, m1)));  // bigger E, bigger interior
}

TEST_CASE("exhausting boxes swallow any fixed box") {
  Window m(2, {{1, 0}, {0, 2}});
  Window target = Window::box({-4, -4}, {4, 4});
  bool swallowed = false;
  for (int n = 0; n < 12 && !swallowed; ++n)
    if (target.subset_of(interior(exhaustion_box(m, n), m))) swallowed = true;
  CHECK(swallowed);
  // the exhaustion always contains the memory and the origin
  for (int n = 0; n < 3; ++n) {
    Window e = exhaustion_box(m, n);
    CHECK(m.subset_of(e));
    CHECK(e.contains({0, 0}));
  }
}

TEST_CASE("coset data for 3Z and diag(2,2)") {
  Sublattice h3 = Sublattice::scaled(1, 3);
  CosetData cd = coset_data(h3);
  CHECK(cd.representatives == Window(1, {{0}, {1}, {2}}));
  CHECK(cd.project({7}) == 1);
  CHECK(cd.project({-1}) == 2);

  Sublattice d22 = Sublattice::diagonal({2, 2});
  CHECK(d22.index() == 4);
  CHECK(coset_data(d22).representatives.size() == 4);
}

TEST_CASE("projection is constant on cosets") {
  Rng rng(55);
  Sublattice h(2, {{2, 1}, {0, 3}});
  CosetData cd = coset_data(h);
  for (int trial = 0; trial < 100; ++trial) {
    Cell g = {rng.range(-20, 20), rng.range(-20, 20)};
    Cell coeffs = {rng.range(-5, 5), rng.range(-5, 5)};
    Cell in_h = h.embed(coeffs);
    CHECK(h.contains(in_h));
    CHECK(cd.project(cell_add(g, in_h)) == cd.project(g));
  }
}

TEST_CASE("coset count equals the determinant for random HNF bases") {
  Rng rng(77);
  int tested = 0;
  while (tested < 20) {
    long long a = rng.range(1, 4), c = rng.range(1, 4);
    long long b = rng.range(0, c - 1 >= 0 ? c - 1 : 0);
    Sublattice h(2, {{a, b}, {0, c}});
    if (h.index() > 24) continue;
    ++tested;
    CHECK(coset_data(h).representatives.size() == h.index());
    // the canonical HNF is idempotent: rebuilding from the basis changes nothing
    Sublattice rebuilt(2, h.basis());
    CHECK(rebuilt == h);
  }
}

TEST_CASE("hermite reduction of redundant and unsorted generators") {
  // rows 2 and 4 generate 2Z
  Sublattice h(1, {{4}, {2}});
  CHECK(h.index() == 2);
  CHECK(h.contains({6}));
  CHECK(!h.contains({3}));

  // dependent rows collapse to rank 1
  Sublattice r1(2, {{1, 2}, {2, 4}});
  CHECK(r1.rank() == 1);
  CHECK_THROWS_AS(r1.index(), DomainError);
  CHECK(r1.contains({3, 6}));
  CHECK(!r1.contains({1, 0}));
  CHECK(r1.coordinates({3, 6}) == Cell{3});

  CHECK_THROWS_AS(coset_data(r1), DomainError);
}

TEST_CASE("lattice parsing") {
  Sublattice a = Sublattice::parse("3", 1);
  CHECK(a.index() == 3);
  Sublattice b = Sublattice::parse("2", 2);  // scalar means 2 Z^2
  CHECK(b.index() == 4);
  Sublattice c = Sublattice::parse("2,1;0,3", 2);
  CHECK(c.index() == 6);
  CHECK_THROWS_AS(Sublattice::parse("x", 1), ParseError);
}

TEST_CASE("windows: translation, sumset, cells stay sorted") {
  Window w(1, {{3}, {1}, {2}, {1}});
  CHECK(w.size() == 3);  // deduplicated
  CHECK(w.cell(0) == Cell{1});
  Window t = w.translated({-1});
  CHECK(t.cell(0) == Cell{0});
  Window s = Window(1, {{0}, {1}}).sumset(Window(1, {{0}, {1}}));
  CHECK(s == Window(1, {{0}, {1}, {2}}));
  CHECK(Window(1, {{1}}).negated() == Window(1, {{-1}}));
}

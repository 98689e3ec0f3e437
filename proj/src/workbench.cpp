#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aca/workbench.hpp"

namespace aca {

namespace {

struct Args {
  std::string command;
  std::map<std::string, std::string> opts;

  bool has(const std::string& k) const { return opts.count(k) > 0; }
  std::string get(const std::string& k, const std::string& fallback = "") const {
    auto it = opts.find(k);
    return it == opts.end() ? fallback : it->second;
  }
  std::string require(const std::string& k) const {
    auto it = opts.find(k);
    if (it == opts.end()) throw DomainError("missing required option --" + k);
    return it->second;
  }
  long long num(const std::string& k, long long fallback) const {
    auto it = opts.find(k);
    if (it == opts.end()) return fallback;
    return std::stoll(it->second);
  }
};

Args parse_args(const std::vector<std::string>& argv) {
  if (argv.empty()) throw DomainError("no subcommand given");
  Args a;
  a.command = argv[0];
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& tok = argv[i];
    if (tok.rfind("--", 0) != 0) throw DomainError("unexpected argument '" + tok + "'");
    std::string key = tok.substr(2);
    if (key == "timing" || key == "points") {
      a.opts[key] = "1";
      continue;
    }
    if (i + 1 >= argv.size()) throw DomainError("option --" + key + " needs a value");
    a.opts[key] = argv[++i];
  }
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AutomatonSpec load_spec(const Args& a, const std::string& key = "spec") {
  return AutomatonSpec::parse(read_file(a.require(key)));
}

std::vector<Sublattice> parse_lattice_list(const std::string& text, int dim) {
  std::vector<Sublattice> out;
  if (dim == 1) {
    // scalars: comma- or space-separated ("1,2,3,4")
    std::string norm = text;
    for (auto& c : norm)
      if (c == ',') c = ' ';
    std::stringstream ss(norm);
    std::string item;
    while (ss >> item) out.push_back(Sublattice::parse(item, dim));
  } else {
    // space-separated matrices "a,b;c,d"
    std::stringstream ss(text);
    std::string item;
    while (ss >> item) out.push_back(Sublattice::parse(item, dim));
  }
  if (out.empty()) throw DomainError("empty lattice list");
  return out;
}

void emit_pattern(std::ostream& out, const std::string& label, const Pattern& p) {
  out << label << ":\n" << p.to_text();
}

int cmd_eval(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  Pattern p = Pattern::parse(read_file(a.require("pattern")), ca.alphabet(), ca.dim());
  Pattern q = ca_apply(ca, p);
  out << "status=ok\n";
  out << "support=" << q.support().to_string() << "\n";
  emit_pattern(out, "pattern", q);
  return 0;
}

int cmd_compose(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec first = load_spec(a);
  AutomatonSpec second = AutomatonSpec::parse(read_file(a.require("with")));
  CellularAutomaton sigma = first.build(budget);
  CellularAutomaton tau = second.build(budget);
  CellularAutomaton comp = ca_compose(sigma, tau);
  out << "status=ok\n";
  out << "memory=" << comp.memory().to_string() << "\n";
  out << AutomatonSpec::from_automaton(comp, first.name + "." + second.name).print();
  return 0;
}

int cmd_minmem(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  MinimalMemoryResult res = ca_minimal_memory(ca);
  out << "status=ok\n";
  out << "minimal_memory=" << res.minimal_memory.to_string() << "\n";
  out << AutomatonSpec::from_automaton(res.automaton, spec.name + ".min").print();
  return 0;
}

int cmd_change_group(const Args& a, std::ostream& out, Budget* budget, GroupChange dir) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  Sublattice h = Sublattice::parse(a.require("lattice"),
                                   dir == GroupChange::Restrict ? ca.dim() : -1);
  if (dir == GroupChange::Induce && h.rank() != ca.dim())
    throw DomainError("induction requires a lattice of rank equal to the automaton dimension");
  CellularAutomaton moved = ca_change_group(ca, h, dir);
  out << "status=ok\n";
  out << "lattice=" << h.to_string() << "\n";
  out << AutomatonSpec::from_automaton(
             moved, spec.name + (dir == GroupChange::Restrict ? ".restricted" : ".induced"))
             .print();
  return 0;
}

int cmd_periodic(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  Sublattice h = Sublattice::parse(a.require("lattice"), ca.dim());
  RegularMap tmap = ca_periodic_map(ca, h);
  out << "status=ok\n";
  out << "lattice=" << h.to_string() << "\n";
  out << "index=" << h.index() << "\n";
  out << tmap.to_text();
  return 0;
}

int cmd_surjunctivity(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  std::vector<Sublattice> lattices = parse_lattice_list(a.require("lattices"), ca.dim());
  int tower = static_cast<int>(a.num("tower", 1));
  SurjunctivityReport rep = surjunctivity_check(ca, lattices, tower, budget);
  out << "status=ok\n";
  out << "verdict=" << (rep.injective_everywhere ? "injective-implies-surjective-observed"
                                                 : "non-injective")
      << "\n";
  for (const auto& e : rep.entries) {
    out << "lattice=" << e.lattice.to_string() << "\n";
    for (const auto& lv : e.report.levels)
      out << "  level k=" << lv.k << " q=" << lv.q << " points=" << lv.source_count
          << " image=" << lv.image_count << " injective=" << (lv.injective ? "yes" : "no")
          << " surjective=" << (lv.surjective ? "yes" : "no") << "\n";
  }
  for (const auto& e : rep.entries) {
    if (e.collision) {
      out << "certificate:\n";
      out << "  kind=periodic-colliding-pair\n";
      out << "  lattice=" << e.lattice.to_string() << "\n";
      std::istringstream first(e.collision->first.to_text()), second(e.collision->second.to_text());
      std::string line;
      while (std::getline(first, line)) out << "  a." << line << "\n";
      while (std::getline(second, line)) out << "  b." << line << "\n";
      return 2;
    }
  }
  return 0;
}

int cmd_image(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  int depth = static_cast<int>(a.num("depth", 1));
  Window e = exhaustion_box(ca.memory(), depth);
  RegularMap trunc = ca_truncation(ca, e);
  AlgebraicSet closure = image_closure(trunc, budget);
  out << "status=ok\n";
  out << "window=" << e.to_string() << "\n";
  out << "target_window=" << interior(e, ca.memory()).to_string() << "\n";
  out << "closure_gens=" << closure.gens().size() << "\n";
  for (const auto& g : closure.gens()) out << "  gen=" << g.to_string() << "\n";
  if (ca.field()->is_finite()) {
    std::vector<Point> img = image_points(trunc, budget);
    std::vector<Point> closure_pts = enumerate_points(closure, budget);
    bool contained = true;
    for (const auto& p : img)
      if (!std::binary_search(closure_pts.begin(), closure_pts.end(), p, point_less))
        contained = false;
    out << "image_points=" << img.size() << "\n";
    out << "closure_points=" << closure_pts.size() << "\n";
    out << "image_inside_closure=" << (contained ? "yes" : "no") << "\n";
    if (a.has("points")) {
      out << "points:\n";
      for (const auto& p : img) out << point_to_string(p) << "\n";
    }
  }
  return 0;
}

int cmd_invert(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  int depth = static_cast<int>(a.num("depth", 4));
  ReversibilityResult res = reversibility_search(ca, depth, budget);
  if (res.status == ReversibilityResult::Status::InverseFound) {
    out << "status=ok\n";
    out << "verdict=inverse-found\n";
    out << "concluded_level=" << res.concluded_level << "\n";
    out << "roundtrip_verified=" << (res.roundtrip_verified ? "yes" : "no") << "\n";
    out << AutomatonSpec::from_automaton(*res.inverse, spec.name + "-inverse").print();
    return 0;
  }
  if (res.status == ReversibilityResult::Status::WitnessPair) {
    out << "status=obstruction\n";
    out << "verdict=non-injectivity-witness\n";
    out << "certificate:\n";
    if (res.periodic_witness) {
      out << "  kind=periodic-colliding-pair\n";
      std::istringstream first(res.periodic_witness->first.to_text()),
          second(res.periodic_witness->second.to_text());
      std::string line;
      while (std::getline(first, line)) out << "  a." << line << "\n";
      while (std::getline(second, line)) out << "  b." << line << "\n";
    }
    if (res.witness) {
      out << "  kind=window-pair candidate_level=" << res.witness_level << "\n";
      std::istringstream first(res.witness->first.to_text()), second(res.witness->second.to_text());
      std::string line;
      while (std::getline(first, line)) out << "  a." << line << "\n";
      while (std::getline(second, line)) out << "  b." << line << "\n";
    }
    return 2;
  }
  out << "status=ok\n";
  out << "verdict=inconclusive\n";
  out << "diagnostics=" << res.diagnostics;
  return 0;
}

int cmd_closedimage(const Args& a, std::ostream& out, Budget* budget) {
  AutomatonSpec spec = load_spec(a);
  CellularAutomaton ca = spec.build(budget);
  int depth = static_cast<int>(a.num("depth", 3));
  std::function<Point(const Cell&)> target;
  if (a.has("target-constant")) {
    Point v;
    std::stringstream vs(a.get("target-constant"));
    std::string item;
    while (std::getline(vs, item, ',')) v.push_back(parse_scalar(item, ca.field()));
    if (static_cast<int>(v.size()) != ca.alphabet_ambient())
      throw DomainError("constant target needs one value per alphabet coordinate");
    target = [v](const Cell&) { return v; };
  } else {
    Pattern p = Pattern::parse(read_file(a.require("target")), ca.alphabet(), ca.dim());
    target = [p](const Cell& c) { return p.value_at(c); };
  }
  ClosedImageResult res = closed_image_search(ca, target, depth, budget);
  switch (res.status) {
    case ClosedImageResult::Status::PreimageFound:
      out << "status=ok\n";
      out << "verdict=preimage-found\n";
      out << "matched_window=" << res.matched_window.to_string() << "\n";
      emit_pattern(out, "preimage", *res.preimage);
      return 0;
    case ClosedImageResult::Status::EmptyFiber:
      out << "status=obstruction\n";
      out << "verdict=target-outside-image\n";
      out << "certificate:\n";
      out << "  kind=empty-fiber\n";
      out << "  level=" << res.obstruction_level << "\n";
      out << "  note=" << res.note << "\n";
      return 2;
    case ClosedImageResult::Status::SymbolicEvidence: {
      out << "status=ok\n";
      out << "verdict=symbolic-evidence-only\n";
      for (std::size_t n = 0; n < res.level_consistent.size(); ++n)
        out << "level " << n << " fiber_consistent=" << (res.level_consistent[n] ? "yes" : "no")
            << "\n";
      out << "closure_chain_stabilized=" << (res.chain_stabilized ? "yes" : "no") << "\n";
      out << "note=" << res.note << "\n";
      return 0;
    }
  }
  return 1;
}

ProjectiveSequence mlcheck_demo(const std::string& demo, const FieldRef& field) {
  AlgebraicSet line = AlgebraicSet::full(field, 1);
  RosterRef roster = line.roster();
  MultiPoly t = MultiPoly::variable(field, roster, 0);
  if (demo == "constant") {
    auto level = [line](int) -> SequenceLevel {
      return {line, ConstructibleSet::from_closed(line)};
    };
    auto transition = [line](int) { return RegularMap::identity(line); };
    return ProjectiveSequence(level, transition, false);
  }
  if (demo == "squaring") {
    auto level = [line](int) -> SequenceLevel {
      return {line, ConstructibleSet::from_closed(line)};
    };
    auto transition = [line, t](int) {
      return RegularMap::make_unchecked(line, line, {t * t}, true);
    };
    return ProjectiveSequence(level, transition, false);
  }
  if (demo == "shrinking") {
    if (!field->is_finite()) throw DomainError("the shrinking demo needs a finite field");
    auto level = [line, t, field](int n) -> SequenceLevel {
      MultiPoly q = MultiPoly::constant(field, t.roster(), 1);
      for (int i = 0; i <= n && static_cast<unsigned long long>(i) < field->q; ++i)
        q = q * (t - MultiPoly::constant(field, t.roster(), FieldElement::from_index(field, i)));
      return {line, ConstructibleSet::piece(line, q)};
    };
    auto transition = [line](int) { return RegularMap::identity(line); };
    return ProjectiveSequence(level, transition, false);
  }
  throw DomainError("unknown demo '" + demo + "' (try: constant, squaring, shrinking)");
}

int cmd_mlcheck(const Args& a, std::ostream& out, Budget* budget) {
  FieldRef field = Field::parse(a.get("field", "5"));
  std::string demo = a.get("demo", "squaring");
  int depth = static_cast<int>(a.num("depth", 6));
  ProjectiveSequence seq = mlcheck_demo(demo, field);
  UniversalPointsResult uni = universal_points(seq, 0, depth, budget);
  out << "demo=" << demo << "\n";
  out << "field=" << field->to_string() << "\n";
  out << "universal_sizes=";
  for (std::size_t i = 0; i < uni.stage_sizes.size(); ++i)
    out << (i ? " " : "") << uni.stage_sizes[i];
  out << "\n";
  out << "stabilized=" << (uni.stabilized ? "yes" : "no") << "\n";
  MlLiftResult lift = ml_lift(seq, depth, budget);
  if (!lift.ok) {
    out << "status=obstruction\n";
    out << "certificate:\n";
    out << "  kind=empty-level\n";
    out << "  level=" << lift.obstruction_level << "\n";
    return 2;
  }
  out << "status=ok\n";
  out << "thread=";
  for (std::size_t i = 0; i < lift.thread.size(); ++i)
    out << (i ? " " : "") << point_to_string(lift.thread[i]);
  out << "\n";
  return 0;
}

int cmd_thresholds(const Args& a, std::ostream& out, Budget*) {
  int k = static_cast<int>(a.num("k", 5));
  std::vector<mpq_class> b = real_counterexample_thresholds(k);
  for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i].get_str();
  out << "\n";
  return 0;
}

int cmd_example(const Args& a, std::ostream& out, Budget*) {
  std::map<std::string, std::string> params;
  for (const auto& [k, v] : a.opts)
    if (k != "name" && k != "out" && k != "timing" && k != "budget" && k != "seed" && k != "part")
      params[k] = v;
  CatalogEntry entry = example_catalog(a.require("name"), params);
  std::string part = a.get("part", "forward");
  out << "# " << entry.description << "\n";
  if (part == "forward") {
    out << entry.spec.print();
  } else if (part == "inverse") {
    if (!entry.inverse)
      throw DomainError("no closed-form inverse is recorded for '" + a.get("name") + "'");
    out << entry.inverse->print();
  } else {
    throw DomainError("--part must be forward or inverse");
  }
  return 0;
}

// ---- selftest ----------------------------------------------------------

MultiPoly random_poly(Rng& rng, const FieldRef& field, const RosterRef& roster, int max_deg,
                      int terms) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(roster->size(), 0);
    for (std::size_t v = 0; v < roster->size(); ++v)
      e[v] = static_cast<int>(rng.below(max_deg + 1));
    FieldElement c = field->is_finite()
                         ? FieldElement::from_index(field, rng.below(field->q))
                         : FieldElement::from_integer(field, rng.range(-5, 5));
    ts.push_back({std::move(e), std::move(c)});
  }
  return MultiPoly::from_terms(field, roster, std::move(ts));
}

Point random_point(Rng& rng, const FieldRef& field, int m) {
  Point p;
  for (int i = 0; i < m; ++i)
    p.push_back(field->is_finite() ? FieldElement::from_index(field, rng.below(field->q))
                                   : FieldElement::from_integer(field, rng.range(-9, 9)));
  return p;
}

int cmd_selftest(const Args& a, std::ostream& out, Budget* budget) {
  Rng rng(static_cast<std::uint64_t>(a.num("seed", 20260809)));
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  {  // field arithmetic
    FieldRef f7 = Field::prime(7);
    bool ok = true;
    for (long long x = 1; x < 7; ++x) {
      FieldElement e = FieldElement::from_integer(f7, x);
      if (!(e * e.inverse()).is_one()) ok = false;
    }
    FieldRef f9 = Field::extension_default(3, 2);
    for (unsigned long long i = 0; i < 9; ++i) {
      FieldElement e = FieldElement::from_index(f9, i);
      if (!(e.pow(9) == e)) ok = false;
    }
    check("field-arithmetic", ok);
  }
  {  // ring laws and evaluation homomorphism
    bool ok = true;
    for (FieldRef field : {Field::prime(5), Field::rationals()}) {
      RosterRef r = VarRoster::canonical(3);
      for (int trial = 0; trial < 30; ++trial) {
        MultiPoly f = random_poly(rng, field, r, 3, 4);
        MultiPoly g = random_poly(rng, field, r, 3, 4);
        MultiPoly h = random_poly(rng, field, r, 3, 4);
        if (!((f + g) + h == f + (g + h))) ok = false;
        if (!(f * g == g * f)) ok = false;
        if (!(f * (g + h) == f * g + f * h)) ok = false;
        Point p = random_point(rng, field, 3);
        if (!((f * g).eval(p) == f.eval(p) * g.eval(p))) ok = false;
        if (!((f + g).eval(p) == f.eval(p) + g.eval(p))) ok = false;
      }
    }
    check("ring-laws", ok);
  }
  {  // groebner S-polynomials reduce to zero
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    RosterRef r = VarRoster::canonical(2);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<MultiPoly> gens = {random_poly(rng, f5, r, 2, 3), random_poly(rng, f5, r, 2, 3)};
      IdealBasis gb = groebner_basis(IdealBasis::make(f5, r, gens), MonomialOrder::grevlex(), budget);
      for (std::size_t i = 0; i < gb.gens.size(); ++i)
        for (std::size_t j = i + 1; j < gb.gens.size(); ++j)
          if (!reduce_mod(s_polynomial(gb.gens[i], gb.gens[j]), gb, budget).is_zero()) ok = false;
      for (const auto& g : gens)
        if (!g.is_zero() && !reduce_mod(g, gb, budget).is_zero()) ok = false;
    }
    check("groebner-spolys", ok);
  }
  {  // functional normal form agrees everywhere
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    RosterRef r = VarRoster::canonical(2);
    for (int trial = 0; trial < 10; ++trial) {
      MultiPoly f = random_poly(rng, f5, r, 7, 4);
      MultiPoly nf = functional_normal_form(f);
      for (unsigned long long i = 0; i < 25; ++i) {
        Point p = point_from_index(f5, 2, i);
        if (!(f.eval(p) == nf.eval(p))) ok = false;
      }
      for (const auto& t : nf.terms())
        for (int e : t.exps)
          if (e >= 5) ok = false;
    }
    check("functional-normal-form", ok);
  }
  {  // constructible boolean algebra matches pointwise logic
    FieldRef f5 = Field::prime(5);
    RosterRef r = VarRoster::canonical(2);
    MultiPoly x = MultiPoly::variable(f5, r, 0), y = MultiPoly::variable(f5, r, 1);
    ConstructibleSet c = ConstructibleSet::from_closed(AlgebraicSet(f5, r, {x}));
    ConstructibleSet d = ConstructibleSet::piece(AlgebraicSet(f5, r, {}), y);
    bool ok = true;
    for (unsigned long long i = 0; i < 25; ++i) {
      Point p = point_from_index(f5, 2, i);
      bool in_c = c.contains(p), in_d = d.contains(p);
      if (cs_union(c, d).contains(p) != (in_c || in_d)) ok = false;
      if (cs_intersect(c, d).contains(p) != (in_c && in_d)) ok = false;
      if (cs_complement(c).contains(p) != !in_c) ok = false;
    }
    check("constructible-boolean-algebra", ok);
  }
  {  // image points lie inside the image closure
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    AlgebraicSet plane = AlgebraicSet::full(f5, 2);
    for (int trial = 0; trial < 5; ++trial) {
      RegularMap f = RegularMap::make_unchecked(
          plane, plane,
          {random_poly(rng, f5, plane.roster(), 2, 3), random_poly(rng, f5, plane.roster(), 2, 3)});
      AlgebraicSet cl = image_closure(f, budget);
      for (const auto& p : image_points(f, budget))
        if (!cl.contains(p)) ok = false;
    }
    check("chevalley-image-in-closure", ok);
  }
  {  // lattice basics
    bool ok = true;
    Window e = Window::box({-3}, {3});
    if (!(interior(e, Window(1, {{0}})) == e)) ok = false;
    for (int trial = 0; trial < 10; ++trial) {
      long long a11 = static_cast<long long>(rng.below(4)) + 1;
      long long a22 = static_cast<long long>(rng.below(4)) + 1;
      long long a12 = static_cast<long long>(rng.below(5)) - 2;
      Sublattice h(2, {{a11, a12}, {0, a22}});
      if (coset_data(h).representatives.size() != h.index()) ok = false;
    }
    check("lattice-cosets", ok);
  }
  {  // composition agrees with sequential application
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    AlgebraicSet line = AlgebraicSet::full(f5, 1);
    Window mw(1, {{0}, {1}});
    RosterRef blocks = block_roster(mw, 1);
    for (int trial = 0; trial < 5; ++trial) {
      CellularAutomaton sigma = CellularAutomaton::make_unchecked(
          line, mw, {random_poly(rng, f5, blocks, 2, 4)});
      CellularAutomaton tau = CellularAutomaton::make_unchecked(
          line, mw, {random_poly(rng, f5, blocks, 2, 4)});
      CellularAutomaton comp = ca_compose(sigma, tau);
      for (int t = 0; t < 4; ++t) {
        Window e = Window::box({0}, {5});
        std::vector<Point> vals;
        for (std::size_t i = 0; i < e.size(); ++i) vals.push_back(random_point(rng, f5, 1));
        Pattern p(line, e, vals);
        if (!(ca_apply(comp, p) == ca_apply(sigma, ca_apply(tau, p)))) ok = false;
      }
    }
    check("composition-vs-sequential", ok);
  }
  {  // equivariance of ca_apply
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    AlgebraicSet line = AlgebraicSet::full(f5, 1);
    Window mw(1, {{0}, {1}});
    RosterRef blocks = block_roster(mw, 1);
    CellularAutomaton ca = CellularAutomaton::make_unchecked(
        line, mw, {random_poly(rng, f5, blocks, 2, 4)});
    for (int t = 0; t < 10; ++t) {
      Window e = Window::box({-2}, {3});
      std::vector<Point> vals;
      for (std::size_t i = 0; i < e.size(); ++i) vals.push_back(random_point(rng, f5, 1));
      Pattern p(line, e, vals);
      Cell g = {rng.range(-3, 3)};
      if (!(ca_apply(ca, p.translated(g)) == ca_apply(ca, p).translated(g))) ok = false;
    }
    check("equivariance", ok);
  }
  {  // conjugation identity of the periodic map
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    AlgebraicSet line = AlgebraicSet::full(f5, 1);
    Window mw(1, {{0}, {1}});
    RosterRef blocks = block_roster(mw, 1);
    CellularAutomaton ca = CellularAutomaton::make_unchecked(
        line, mw, {random_poly(rng, f5, blocks, 2, 4)});
    Sublattice h = Sublattice::scaled(1, 2);
    RegularMap tmap = ca_periodic_map(ca, h);
    for (const Point& y : enumerate_points(tmap.source, budget)) {
      PeriodicConfiguration conf = periodic_from_product_point(ca, h, y);
      PeriodicConfiguration image_conf = periodic_from_product_point(ca, h, tmap.eval(y));
      Window probe = Window::box({-2}, {3});
      Pattern lhs = image_conf.pattern_on(interior(probe, ca.memory()));
      Pattern rhs = ca_apply(ca, conf.pattern_on(probe));
      if (!(lhs == rhs)) ok = false;
    }
    check("periodic-conjugation", ok);
  }
  {  // finite Mittag-Leffler lifting on random sequences
    bool ok = true;
    FieldRef f5 = Field::prime(5);
    AlgebraicSet plane = AlgebraicSet::full(f5, 2);
    for (int trial = 0; trial < 5; ++trial) {
      int depth = 3;
      std::vector<RegularMap> maps;
      for (int n = 0; n < depth; ++n)
        maps.push_back(RegularMap::make_unchecked(
            plane, plane,
            {random_poly(rng, f5, plane.roster(), 2, 3), random_poly(rng, f5, plane.roster(), 2, 3)}));
      std::vector<std::vector<Point>> pts(depth + 1);
      for (int i = 0; i < 3; ++i) pts[depth].push_back(random_point(rng, f5, 2));
      for (int n = depth; n-- > 0;) {
        for (const auto& p : pts[n + 1]) pts[n].push_back(maps[n].eval(p));
        if (rng.below(2)) pts[n].push_back(random_point(rng, f5, 2));
      }
      std::vector<SequenceLevel> levels;
      for (int n = 0; n <= depth; ++n)
        levels.push_back({plane, points_to_constructible(pts[n], 2, f5)});
      ProjectiveSequence seq = ProjectiveSequence::from_levels(levels, maps);
      MlLiftResult lift = ml_lift(seq, depth, budget);
      if (!lift.ok) ok = false;
    }
    check("finite-mittag-leffler", ok);
  }
  {  // divergence thresholds
    std::vector<mpq_class> b = real_counterexample_thresholds(6);
    bool ok = b[0] == 1 && b[1] == 2 && b[2] == 5 && b[3] == 26 && b[4] == 677 && b[5] == 458330;
    for (std::size_t i = 1; i < b.size(); ++i)
      if (b[i] != 1 + b[i - 1] * b[i - 1]) ok = false;
    check("thresholds", ok);
  }
  {  // parallel kernels match the serial reference
    bool ok = true;
    FieldRef f7 = Field::prime(7);
    RosterRef r = VarRoster::canonical(2);
    for (int trial = 0; trial < 5; ++trial) {
      AlgebraicSet s(f7, r, {random_poly(rng, f7, r, 2, 3)});
      std::vector<Point> par = enumerate_points(s, budget);
      std::vector<Point> ser = enumerate_points_serial(s, budget);
      if (par.size() != ser.size()) ok = false;
      for (std::size_t i = 0; i < par.size() && ok; ++i)
        if (compare_points(par[i], ser[i]) != 0) ok = false;
    }
    check("parallel-vs-serial", ok);
  }

  out << (failures == 0 ? "selftest=pass\n" : "selftest=fail\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out) {
  std::ostringstream body;
  int code = 0;
  Args a;
  try {
    a = parse_args(argv);
    Budget budget(a.num("budget", Budget::kDefault));
    body << "command=";
    for (std::size_t i = 0; i < argv.size(); ++i) body << (i ? " " : "") << argv[i];
    body << "\n";
    auto t0 = std::chrono::steady_clock::now();

    std::ostringstream rep;
    if (a.command == "eval") code = cmd_eval(a, rep, &budget);
    else if (a.command == "compose") code = cmd_compose(a, rep, &budget);
    else if (a.command == "minmem") code = cmd_minmem(a, rep, &budget);
    else if (a.command == "restrict") code = cmd_change_group(a, rep, &budget, GroupChange::Restrict);
    else if (a.command == "induce") code = cmd_change_group(a, rep, &budget, GroupChange::Induce);
    else if (a.command == "periodic") code = cmd_periodic(a, rep, &budget);
    else if (a.command == "surjunctivity") code = cmd_surjunctivity(a, rep, &budget);
    else if (a.command == "image") code = cmd_image(a, rep, &budget);
    else if (a.command == "invert") code = cmd_invert(a, rep, &budget);
    else if (a.command == "closedimage") code = cmd_closedimage(a, rep, &budget);
    else if (a.command == "mlcheck") code = cmd_mlcheck(a, rep, &budget);
    else if (a.command == "thresholds") code = cmd_thresholds(a, rep, &budget);
    else if (a.command == "example") code = cmd_example(a, rep, &budget);
    else if (a.command == "selftest") code = cmd_selftest(a, rep, &budget);
    else throw DomainError("unknown subcommand '" + a.command + "'");

    if (a.command == "thresholds" || a.command == "example") {
      // bare output, directly consumable
      body.str(rep.str());
    } else {
      body << rep.str();
      body << "budget.used=" << budget.used() << "\n";
      if (a.has("timing")) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        body << "elapsed_ms=" << ms << "\n";
      }
    }
  } catch (const BudgetError& e) {
    body << "status=budget-exhausted\n";
    body << "error=" << e.what() << "\n";
    code = 3;
  } catch (const ParseError& e) {
    body << "status=usage-error\n";
    body << "error=" << e.what() << "\n";
    code = 1;
  } catch (const Error& e) {
    body << "status=usage-error\n";
    body << "error=" << e.what() << "\n";
    code = 1;
  } catch (const std::exception& e) {
    body << "status=usage-error\n";
    body << "error=" << e.what() << "\n";
    code = 1;
  }

  if (a.has("out")) {
    std::ofstream f(a.get("out"));
    if (!f) {
      out << "error: cannot write to " << a.get("out") << "\n";
      return 1;
    }
    f << body.str();
  } else {
    out << body.str();
  }
  return code;
}

}  // namespace aca

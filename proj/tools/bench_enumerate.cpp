// Benchmark comparing the OpenMP enumeration kernels with the serial
// reference implementations on identical inputs.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "aca/enumerate.hpp"

using namespace aca;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

MultiPoly random_poly(Rng& rng, const FieldRef& field, const RosterRef& roster) {
  std::vector<Term> ts;
  for (int t = 0; t < 4; ++t) {
    std::vector<int> e(roster->size(), 0);
    for (std::size_t v = 0; v < roster->size(); ++v) e[v] = static_cast<int>(rng.below(3));
    ts.push_back({std::move(e), FieldElement::from_index(field, rng.below(field->q))});
  }
  return MultiPoly::from_terms(field, roster, std::move(ts));
}

}  // namespace

int main(int argc, char** argv) {
  long long p = 5;
  int vars = 8;
  int trials = 3;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--field" && i + 1 < argc) p = std::stoll(argv[++i]);
    else if (a == "--vars" && i + 1 < argc) vars = std::stoi(argv[++i]);
    else if (a == "--trials" && i + 1 < argc) trials = std::stoi(argv[++i]);
    else {
      std::cerr << "usage: aca-bench [--field p] [--vars m] [--trials t]\n";
      return 1;
    }
  }

  FieldRef field = Field::prime(p);
  RosterRef roster = VarRoster::canonical(vars);
  Rng rng(42);

  unsigned long long grid = 1;
  for (int i = 0; i < vars; ++i) grid *= field->q;
  std::cout << "grid F_" << p << "^" << vars << " = " << grid << " points, " << trials
            << " trials per kernel\n\n";
  std::cout << "kernel              serial_ms   parallel_ms   speedup   agree\n";

  for (int t = 0; t < trials; ++t) {
    AlgebraicSet s(field, roster, {random_poly(rng, field, roster), random_poly(rng, field, roster)});
    std::vector<Point> par, ser;
    double tp = time_ms([&] { par = enumerate_points(s); });
    double tsr = time_ms([&] { ser = enumerate_points_serial(s); });
    bool agree = par.size() == ser.size();
    for (std::size_t i = 0; agree && i < par.size(); ++i)
      agree = compare_points(par[i], ser[i]) == 0;
    std::printf("enumerate_points  %10.1f  %12.1f  %8.2fx   %s\n", tsr, tp, tsr / tp,
                agree ? "yes" : "NO");
  }
  for (int t = 0; t < trials; ++t) {
    AlgebraicSet full = AlgebraicSet::full(field, vars / 2);
    std::vector<MultiPoly> comps;
    for (int j = 0; j < vars / 2; ++j) comps.push_back(random_poly(rng, field, full.roster()));
    RegularMap f = RegularMap::make_unchecked(full, full, comps);
    std::vector<Point> par, ser;
    double tp = time_ms([&] { par = image_points(f); });
    double tsr = time_ms([&] { ser = image_points_serial(f); });
    bool agree = par.size() == ser.size();
    for (std::size_t i = 0; agree && i < par.size(); ++i)
      agree = compare_points(par[i], ser[i]) == 0;
    std::printf("image_points      %10.1f  %12.1f  %8.2fx   %s\n", tsr, tp, tsr / tp,
                agree ? "yes" : "NO");
  }
  return 0;
}

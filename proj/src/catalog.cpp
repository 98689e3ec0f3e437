#include <sstream>

#include "aca/workbench.hpp"

namespace aca {

namespace {

std::string get(const std::map<std::string, std::string>& params, const std::string& key,
                const std::string& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

AutomatonSpec base_spec(const std::string& name, const FieldRef& field, int d, int m) {
  AutomatonSpec spec;
  spec.name = name;
  spec.field = field;
  spec.group_dim = d;
  spec.alphabet_ambient = m;
  return spec;
}

CatalogEntry make_shift(const std::map<std::string, std::string>& params) {
  FieldRef field = Field::parse(get(params, "field", "5"));
  Cell by = parse_cell(get(params, "by", "1"));
  int m = std::stoi(get(params, "m", "1"));
  int d = static_cast<int>(by.size());
  AutomatonSpec spec = base_spec("shift", field, d, m);
  spec.memory = {by};
  for (int j = 1; j <= m; ++j) spec.rule_polys.push_back(block_var_name(by, j));
  AutomatonSpec inv = base_spec("shift-inverse", field, d, m);
  inv.memory = {cell_neg(by)};
  for (int j = 1; j <= m; ++j) inv.rule_polys.push_back(block_var_name(cell_neg(by), j));
  return {spec, inv, "coordinate shift by " + cell_to_string(by)};
}

CatalogEntry make_affine(const std::map<std::string, std::string>& params) {
  FieldRef field = Field::parse(get(params, "field", "5"));
  FieldElement alpha = parse_scalar(get(params, "alpha", "2"), field);
  FieldElement beta = parse_scalar(get(params, "beta", "3"), field);
  long long m0 = std::stoll(get(params, "m0", "1"));
  if (alpha.is_zero()) throw DomainError("affine rule needs alpha != 0");
  Cell c = {m0};
  AutomatonSpec spec = base_spec("affine", field, 1, 1);
  spec.memory = {c};
  {
    RosterRef r = block_roster(Window(1, {c}), 1);
    MultiPoly rule = MultiPoly::variable(field, r, 0).scaled(alpha) +
                     MultiPoly::constant(field, r, beta);
    spec.rule_polys = {rule.to_string()};
  }
  Cell ic = {-m0};
  AutomatonSpec inv = base_spec("affine-inverse", field, 1, 1);
  inv.memory = {ic};
  {
    RosterRef r = block_roster(Window(1, {ic}), 1);
    FieldElement ainv = alpha.inverse();
    MultiPoly rule = MultiPoly::variable(field, r, 0).scaled(ainv) -
                     MultiPoly::constant(field, r, ainv * beta);
    inv.rule_polys = {rule.to_string()};
  }
  return {spec, inv, "injective affine rule a*x(n+m0)+b; bijective with affine inverse"};
}

CatalogEntry make_pointwise(const std::map<std::string, std::string>& params) {
  FieldRef field = Field::parse(get(params, "field", "5"));
  std::string f = get(params, "f", "t1");
  Cell g0 = parse_cell(get(params, "g0", "1"));
  int d = static_cast<int>(g0.size());
  AutomatonSpec spec = base_spec("pointwise", field, d, 1);
  spec.memory = {g0};
  RosterRef tro = VarRoster::canonical(1);
  MultiPoly fp = parse_poly(f, field, tro);
  RosterRef r = block_roster(Window(d, {g0}), 1);
  spec.rule_polys = {fp.transported(r, {0}).to_string()};
  return {spec, std::nullopt, "pointwise rule f applied at the cell g0 away"};
}

CatalogEntry make_sl2(const std::map<std::string, std::string>& params) {
  FieldRef field = Field::parse(get(params, "field", "5"));
  AutomatonSpec spec = base_spec("sl2-difference", field, 1, 4);
  spec.alphabet_gens = {parse_poly("t1*t4-t2*t3-1", field, VarRoster::canonical(4)).to_string()};
  spec.memory = {{0}, {1}};
  // x(n+1)^(-1) x(n) with the inverse realized by the adjugate (det = 1):
  // [t4 -t2; -t3 t1] of cell 1 times the matrix of cell 0, row-major
  spec.rule_polys = {
      "x[1][4]*x[0][1]-x[1][2]*x[0][3]",
      "x[1][4]*x[0][2]-x[1][2]*x[0][4]",
      "x[1][1]*x[0][3]-x[1][3]*x[0][1]",
      "x[1][1]*x[0][4]-x[1][3]*x[0][2]",
  };
  RosterRef blocks = block_roster(Window(1, {{0}, {1}}), 4);
  for (auto& r : spec.rule_polys) r = parse_poly(r, field, blocks).to_string();
  return {spec, std::nullopt,
          "difference rule on an algebraic group: surjective, never injective"};
}

CatalogEntry make_triangular(const std::map<std::string, std::string>& params) {
  FieldRef field = Field::parse(get(params, "field", "5"));
  int m = std::stoi(get(params, "m", "2"));
  if (m < 2) throw DomainError("triangular automata need m >= 2");
  std::vector<std::string> alpha_texts = split(get(params, "alpha", ""), ',');
  std::vector<std::string> p_texts = split(get(params, "p", ""), '|');
  if (alpha_texts.empty()) alpha_texts.assign(m, "1");
  if (p_texts.empty()) p_texts.assign(m, "0");
  if (alpha_texts.size() != static_cast<std::size_t>(m))
    throw DomainError("expected " + std::to_string(m) + " alpha entries");
  if (p_texts.size() != static_cast<std::size_t>(m))
    throw DomainError("expected " + std::to_string(m) + " lower-triangular polynomials");

  std::vector<FieldElement> alpha;
  for (const auto& t : alpha_texts) {
    alpha.push_back(parse_scalar(t, field));
    if (alpha.back().is_zero()) throw DomainError("triangular coefficients must be nonzero");
  }
  RosterRef tro = VarRoster::canonical(std::max(m - 1, 1));
  std::vector<MultiPoly> p_polys;
  for (int i = 0; i < m; ++i) {
    // entry i holds P_{i+1}, allowed to use t1..t_i only
    MultiPoly pi = parse_poly(p_texts[i], field, tro);
    for (std::size_t v = static_cast<std::size_t>(i); v < tro->size(); ++v)
      if (pi.degree_in(v) > 0)
        throw DomainError("P_" + std::to_string(i + 1) + " may only use t1..t" + std::to_string(i));
    p_polys.push_back(std::move(pi));
  }

  // forward: y_i(n) = alpha_i x_i(n+i) + P_i(x_1(n+1), ..., x_{i-1}(n+i-1))
  AutomatonSpec spec = base_spec("triangular" + std::to_string(m), field, 1, m);
  std::vector<Cell> mem;
  for (int i = 1; i <= m; ++i) mem.push_back({i});
  spec.memory = mem;
  Window mem_window(1, mem);
  RosterRef blocks = block_roster(mem_window, m);
  for (int i = 1; i <= m; ++i) {
    std::vector<MultiPoly> images;
    for (std::size_t v = 0; v < tro->size(); ++v) {
      int j = static_cast<int>(v) + 1;  // t_j -> x_j(n+j), block cell j coord j
      int pos = mem_window.index_of({j}) * m + (j - 1);
      images.push_back(MultiPoly::variable(field, blocks, pos));
    }
    MultiPoly lead =
        MultiPoly::variable(field, blocks, mem_window.index_of({static_cast<long long>(i)}) * m + (i - 1))
            .scaled(alpha[i - 1]);
    MultiPoly tail = p_polys[i - 1].is_constant()
                         ? MultiPoly::constant(field, blocks, p_polys[i - 1].constant_value())
                         : p_polys[i - 1].substitute(images);
    spec.rule_polys.push_back((lead + tail).to_string());
  }

  // inverse per the Q recursion:
  // Q_1 = -a_1^{-1} P_1, Q_i = -a_i^{-1} P_i(a_1^{-1}t_1 + Q_1, ..., a_{i-1}^{-1}t_{i-1} + Q_{i-1})
  std::vector<MultiPoly> q_polys;
  for (int i = 1; i <= m; ++i) {
    FieldElement ainv = alpha[i - 1].inverse();
    if (i == 1) {
      q_polys.push_back(
          MultiPoly::constant(field, tro, p_polys[0].constant_value()).scaled(-ainv));
      continue;
    }
    std::vector<MultiPoly> images;
    for (std::size_t v = 0; v < tro->size(); ++v) {
      int j = static_cast<int>(v) + 1;
      if (j <= i - 1) {
        images.push_back(MultiPoly::variable(field, tro, v).scaled(alpha[j - 1].inverse()) +
                         q_polys[j - 1]);
      } else {
        images.push_back(MultiPoly::variable(field, tro, v));
      }
    }
    MultiPoly qi = p_polys[i - 1].is_constant()
                       ? MultiPoly::constant(field, tro, p_polys[i - 1].constant_value())
                       : p_polys[i - 1].substitute(images);
    q_polys.push_back(qi.scaled(-ainv));
  }

  // x_i(n) = a_i^{-1} y_i(n-i) + Q_i(y_1(n-i), ..., y_{i-1}(n-i))
  AutomatonSpec inv = base_spec(spec.name + "-inverse", field, 1, m);
  std::vector<Cell> imem;
  for (int i = 1; i <= m; ++i) imem.push_back({-i});
  inv.memory = imem;
  Window imem_window(1, imem);
  RosterRef iblocks = block_roster(imem_window, m);
  for (int i = 1; i <= m; ++i) {
    int cell_idx = imem_window.index_of({static_cast<long long>(-i)});
    std::vector<MultiPoly> images;
    for (std::size_t v = 0; v < tro->size(); ++v) {
      int j = static_cast<int>(v) + 1;  // t_j -> y_j(n-i)
      images.push_back(MultiPoly::variable(field, iblocks, cell_idx * m + (j - 1)));
    }
    MultiPoly lead = MultiPoly::variable(field, iblocks, cell_idx * m + (i - 1))
                         .scaled(alpha[i - 1].inverse());
    MultiPoly tail = q_polys[i - 1].is_constant()
                         ? MultiPoly::constant(field, iblocks, q_polys[i - 1].constant_value())
                         : q_polys[i - 1].substitute(images);
    inv.rule_polys.push_back((lead + tail).to_string());
  }
  return {spec, inv, "triangular automaton with the recursive closed-form inverse"};
}

CatalogEntry make_real_quadratic(const std::map<std::string, std::string>& params) {
  FieldRef field = Field::parse(get(params, "field", "Q"));
  AutomatonSpec spec = base_spec("real-quadratic", field, 1, 1);
  spec.memory = {{0}, {1}};
  RosterRef blocks = block_roster(Window(1, {{0}, {1}}), 1);
  spec.rule_polys = {parse_poly("x[1][1]-x[0][1]^2", field, blocks).to_string()};
  return {spec, std::nullopt,
          "x(n+1) - x(n)^2: dense image, constant-1 target unreachable over the reals"};
}

CatalogEntry make_frobenius(const std::map<std::string, std::string>& params) {
  long long p = std::stoll(get(params, "p", "3"));
  int k = std::stoi(get(params, "k", "1"));
  FieldRef field = k == 1 ? Field::prime(p) : Field::extension_default(p, k);
  AutomatonSpec spec = base_spec("frobenius", field, 1, 1);
  spec.memory = {{0}};
  RosterRef blocks = block_roster(Window(1, {{0}}), 1);
  spec.rule_polys = {
      MultiPoly::variable(field, blocks, 0).pow(static_cast<int>(p)).to_string()};
  return {spec, std::nullopt,
          "x -> x^p: bijective on every finite level, inverse of growing functional degree"};
}

}  // namespace

CatalogEntry example_catalog(const std::string& name,
                             const std::map<std::string, std::string>& params) {
  if (name == "shift") return make_shift(params);
  if (name == "affine") return make_affine(params);
  if (name == "pointwise") return make_pointwise(params);
  if (name == "sl2-difference") return make_sl2(params);
  if (name == "triangular") return make_triangular(params);
  if (name == "real-quadratic") return make_real_quadratic(params);
  if (name == "frobenius") return make_frobenius(params);
  throw DomainError("unknown catalog name '" + name +
                    "' (try: shift, affine, pointwise, sl2-difference, triangular, "
                    "real-quadratic, frobenius)");
}

}  // namespace aca

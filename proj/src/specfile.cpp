#include <cctype>
#include <sstream>

#include "aca/workbench.hpp"

namespace aca {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

AutomatonSpec AutomatonSpec::parse(const std::string& text) {
  AutomatonSpec spec;
  bool have_field = false, have_group = false, have_alphabet = false, have_memory = false;
  std::vector<std::pair<std::string, std::size_t>> rule_texts;
  std::vector<std::pair<std::string, std::size_t>> gen_texts;

  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "name") {
      spec.name = value;
    } else if (key == "notes") {
      spec.notes = value;
    } else if (key == "field") {
      try {
        spec.field = Field::parse(value);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), lineno, colon + 2);
      }
      have_field = true;
    } else if (key == "group") {
      spec.group_dim = std::stoi(value);
      if (spec.group_dim < 1) throw ParseError("group dimension must be >= 1", lineno, colon + 2);
      have_group = true;
    } else if (key == "alphabet") {
      spec.alphabet_ambient = std::stoi(value);
      if (spec.alphabet_ambient < 1)
        throw ParseError("alphabet ambient must be >= 1", lineno, colon + 2);
      have_alphabet = true;
    } else if (key == "gen") {
      gen_texts.push_back({value, lineno});
    } else if (key == "memory") {
      spec.memory.clear();
      std::stringstream ms(value);
      std::string item;
      while (std::getline(ms, item, ';')) {
        if (trim(item).empty()) continue;
        spec.memory.push_back(parse_cell(item, lineno));
      }
      have_memory = true;
    } else if (key == "rule") {
      rule_texts.push_back({value, lineno});
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!have_field) throw ParseError("missing 'field'", lineno, 1);
  if (!have_group) throw ParseError("missing 'group'", lineno, 1);
  if (!have_alphabet) throw ParseError("missing 'alphabet'", lineno, 1);
  if (!have_memory) throw ParseError("missing 'memory'", lineno, 1);
  for (const auto& c : spec.memory)
    if (static_cast<int>(c.size()) != spec.group_dim)
      throw ParseError("memory cell dimension differs from the group dimension", 0, 1);
  if (rule_texts.size() != static_cast<std::size_t>(spec.alphabet_ambient))
    throw ParseError("expected " + std::to_string(spec.alphabet_ambient) + " rule lines, got " +
                         std::to_string(rule_texts.size()),
                     lineno, 1);

  // canonicalize polynomial texts by a parse/print round trip
  RosterRef tro = VarRoster::canonical(spec.alphabet_ambient);
  for (const auto& [t, ln] : gen_texts)
    spec.alphabet_gens.push_back(parse_poly(t, spec.field, tro, ln).to_string());
  Window mem(spec.group_dim, spec.memory);
  spec.memory = mem.cells();
  RosterRef blocks = block_roster(mem, spec.alphabet_ambient);
  for (const auto& [t, ln] : rule_texts)
    spec.rule_polys.push_back(parse_poly(t, spec.field, blocks, ln).to_string());
  return spec;
}

AutomatonSpec AutomatonSpec::from_automaton(const CellularAutomaton& ca, const std::string& name) {
  AutomatonSpec spec;
  spec.name = name;
  spec.field = ca.field();
  spec.group_dim = ca.dim();
  spec.alphabet_ambient = ca.alphabet_ambient();
  for (const auto& g : ca.alphabet().gens()) spec.alphabet_gens.push_back(g.to_string());
  spec.memory = ca.memory().cells();
  for (const auto& c : ca.rule().components) spec.rule_polys.push_back(c.to_string());
  return spec;
}

std::string AutomatonSpec::print() const {
  std::string s;
  if (!name.empty()) s += "name: " + name + "\n";
  if (!notes.empty()) s += "notes: " + notes + "\n";
  s += "field: " + field->to_string() + "\n";
  s += "group: " + std::to_string(group_dim) + "\n";
  s += "alphabet: " + std::to_string(alphabet_ambient) + "\n";
  for (const auto& g : alphabet_gens) s += "gen: " + g + "\n";
  s += "memory:";
  for (std::size_t i = 0; i < memory.size(); ++i)
    s += (i ? "; " : " ") + cell_to_string(memory[i]);
  s += "\n";
  for (const auto& r : rule_polys) s += "rule: " + r + "\n";
  return s;
}

AlgebraicSet AutomatonSpec::build_alphabet() const {
  RosterRef tro = VarRoster::canonical(alphabet_ambient);
  std::vector<MultiPoly> gens;
  for (const auto& g : alphabet_gens) gens.push_back(parse_poly(g, field, tro));
  return AlgebraicSet(field, tro, std::move(gens));
}

CellularAutomaton AutomatonSpec::build(Budget* budget) const {
  AlgebraicSet alphabet = build_alphabet();
  Window mem(group_dim, memory);
  RosterRef blocks = block_roster(mem, alphabet_ambient);
  std::vector<MultiPoly> polys;
  for (const auto& r : rule_polys) polys.push_back(parse_poly(r, field, blocks));
  return ca_make(alphabet, mem, std::move(polys), budget);
}

}  // namespace aca

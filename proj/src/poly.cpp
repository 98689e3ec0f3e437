#include "aca/poly.hpp"

#include <algorithm>
#include <numeric>

namespace aca {

std::shared_ptr<const VarRoster> VarRoster::make(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(), natural_less);
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1]) throw DomainError("duplicate variable name '" + names[i] + "'");
  return std::shared_ptr<const VarRoster>(new VarRoster(std::move(names)));
}

std::shared_ptr<const VarRoster> VarRoster::canonical(int m, const std::string& stem) {
  std::vector<std::string> names;
  names.reserve(m);
  for (int i = 1; i <= m; ++i) names.push_back(stem + std::to_string(i));
  return make(std::move(names));
}

int VarRoster::index_of(const std::string& n) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), n, natural_less);
  if (it != names_.end() && *it == n) return static_cast<int>(it - names_.begin());
  return -1;
}

int MonomialOrder::compare(const std::vector<int>& a, const std::vector<int>& b) const {
  std::size_t n = a.size();
  auto at = [&](std::size_t i) { return perm.empty() ? i : static_cast<std::size_t>(perm[i]); };
  if (kind == OrderKind::Lex) {
    for (std::size_t i = 0; i < n; ++i) {
      int d = a[at(i)] - b[at(i)];
      if (d != 0) return d > 0 ? 1 : -1;
    }
    return 0;
  }
  long long da = std::accumulate(a.begin(), a.end(), 0LL);
  long long db = std::accumulate(b.begin(), b.end(), 0LL);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = n; i-- > 0;) {
    int d = a[at(i)] - b[at(i)];
    if (d != 0) return d < 0 ? 1 : -1;  // smaller exponent in the least significant slot wins
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  std::string s = kind == OrderKind::Lex ? "lex" : "grevlex";
  if (!perm.empty()) {
    s += "[";
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(perm[i]);
    }
    s += "]";
  }
  return s;
}

MultiPoly MultiPoly::zero(FieldRef field, RosterRef roster, MonomialOrder order) {
  MultiPoly p;
  p.field_ = std::move(field);
  p.roster_ = std::move(roster);
  p.order_ = std::move(order);
  return p;
}

MultiPoly MultiPoly::constant(FieldRef field, RosterRef roster, FieldElement c, MonomialOrder order) {
  MultiPoly p = zero(std::move(field), std::move(roster), std::move(order));
  if (!c.is_zero()) p.terms_.push_back({std::vector<int>(p.roster_->size(), 0), std::move(c)});
  return p;
}

MultiPoly MultiPoly::constant(FieldRef field, RosterRef roster, long long c, MonomialOrder order) {
  FieldElement v = FieldElement::from_integer(field, c);
  return constant(std::move(field), std::move(roster), std::move(v), std::move(order));
}

MultiPoly MultiPoly::variable(FieldRef field, RosterRef roster, std::size_t index, MonomialOrder order) {
  if (index >= roster->size()) throw DomainError("variable index out of range");
  MultiPoly p = zero(field, roster, std::move(order));
  std::vector<int> e(roster->size(), 0);
  e[index] = 1;
  p.terms_.push_back({std::move(e), FieldElement::one(field)});
  return p;
}

MultiPoly MultiPoly::from_terms(FieldRef field, RosterRef roster, std::vector<Term> terms,
                                MonomialOrder order) {
  MultiPoly p = zero(std::move(field), std::move(roster), std::move(order));
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void MultiPoly::normalize() {
  for (const auto& t : terms_)
    if (t.exps.size() != roster_->size()) throw DomainError("exponent vector length mismatch");
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return order_.compare(a.exps, b.exps) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff = out.back().coeff + t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : out)
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_[0].exps)
    if (e != 0) return false;
  return true;
}

FieldElement MultiPoly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? FieldElement::zero(field_) : terms_[0].coeff;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_[0];
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_)
    d = std::max(d, std::accumulate(t.exps.begin(), t.exps.end(), 0));
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

std::vector<bool> MultiPoly::vars_used() const {
  std::vector<bool> used(roster_->size(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i] > 0) used[i] = true;
  return used;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

static void check_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_null() || b.is_null()) throw DomainError("null polynomial");
  if (!same_field(a.field(), b.field())) throw DomainError("field mismatch");
  if (!(*a.roster() == *b.roster())) throw DomainError("variable roster mismatch");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(*this, o);
  MultiPoly rhs = o.order_ == order_ ? o : o.with_order(order_);
  // merge two sorted term lists
  MultiPoly r = zero(field_, roster_, order_);
  r.terms_.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == rhs.terms_.size())
      c = 1;
    else
      c = order_.compare(terms_[i].exps, rhs.terms_[j].exps);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(rhs.terms_[j++]);
    } else {
      FieldElement s = terms_[i].coeff + rhs.terms_[j].coeff;
      if (!s.is_zero()) r.terms_.push_back({terms_[i].exps, std::move(s)});
      ++i, ++j;
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(*this, o);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      std::vector<int> e(a.exps.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps[i] + b.exps[i];
      prod.push_back({std::move(e), a.coeff * b.coeff});
    }
  return from_terms(field_, roster_, std::move(prod), order_);
}

MultiPoly MultiPoly::scaled(const FieldElement& c) const {
  if (c.is_zero()) return zero(field_, roster_, order_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff * c;
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_term().coeff.inverse());
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  MultiPoly acc = constant(field_, roster_, 1, order_);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (is_null() || o.is_null()) return is_null() && o.is_null();
  if (!same_field(field_, o.field_) || !(*roster_ == *o.roster_)) return false;
  const MultiPoly& rhs = o.order_ == order_ ? o : o.with_order(order_);
  if (terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != rhs.terms_[i].exps || !(terms_[i].coeff == rhs.terms_[i].coeff))
      return false;
  return true;
}

FieldElement MultiPoly::eval(const std::vector<FieldElement>& point) const {
  if (point.size() != roster_->size()) throw DomainError("point dimension mismatch");
  for (const auto& v : point)
    if (!same_field(v.field(), field_)) throw DomainError("field mismatch in evaluation point");
  FieldElement acc = FieldElement::zero(field_);
  for (const auto& t : terms_) {
    FieldElement term = t.coeff;
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i] > 0) term = term * point[i].pow(t.exps[i]);
    acc = acc + term;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (images.size() != roster_->size()) throw DomainError("substitution images missing for some variables");
  if (roster_->size() == 0) {
    throw DomainError("substitution into constant roster needs a target; use transported()");
  }
  const MultiPoly& model = images[0];
  for (const auto& im : images) check_compatible(model, im);
  if (!same_field(model.field(), field_)) throw DomainError("field mismatch in substitution");
  // power cache per variable
  std::vector<std::vector<MultiPoly>> pows(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    pows[i].push_back(constant(model.field(), model.roster(), 1, model.order()));
  auto power = [&](std::size_t i, int e) -> const MultiPoly& {
    while (static_cast<int>(pows[i].size()) <= e) pows[i].push_back(pows[i].back() * images[i]);
    return pows[i][e];
  };
  MultiPoly acc = zero(model.field(), model.roster(), model.order());
  for (const auto& t : terms_) {
    MultiPoly term = constant(model.field(), model.roster(), t.coeff, model.order());
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i] > 0) term = term * power(i, t.exps[i]);
    acc = acc + term;
  }
  return acc;
}

MultiPoly MultiPoly::with_order(const MonomialOrder& order) const {
  MultiPoly r = *this;
  r.order_ = order;
  std::sort(r.terms_.begin(), r.terms_.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.exps, b.exps) > 0; });
  return r;
}

MultiPoly MultiPoly::transported(const RosterRef& roster, const std::vector<int>& var_map,
                                 std::optional<MonomialOrder> order) const {
  if (var_map.size() != roster_->size()) throw DomainError("variable map length mismatch");
  MonomialOrder ord = order.value_or(MonomialOrder::grevlex());
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<int> e(roster->size(), 0);
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (var_map[i] < 0) throw DomainError("variable '" + roster_->name(i) + "' has no image");
      e[var_map[i]] += t.exps[i];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return from_terms(field_, roster, std::move(out), std::move(ord));
}

MultiPoly MultiPoly::embedded(const RosterRef& roster) const {
  std::vector<int> map(roster_->size());
  for (std::size_t i = 0; i < roster_->size(); ++i) {
    map[i] = roster->index_of(roster_->name(i));
    if (map[i] < 0) throw DomainError("roster embedding misses variable '" + roster_->name(i) + "'");
  }
  return transported(roster, map, order_.perm.empty() ? std::optional<MonomialOrder>(order_) : std::nullopt);
}

MultiPoly functional_normal_form(const MultiPoly& f) {
  const FieldRef& field = f.field();
  if (!field->is_finite())
    throw DomainError("functional normal form requires a finite field");
  long long q = static_cast<long long>(field->q);
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    std::vector<int> e = t.exps;
    for (auto& x : e)
      if (x >= q) x = static_cast<int>((x - 1) % (q - 1)) + 1;
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly::from_terms(field, f.roster(), std::move(out), f.order());
}

std::string MultiPoly::to_string(bool clear_denominators) const {
  if (terms_.empty()) return "0";
  FieldElement scale = FieldElement::one(field_);
  if (clear_denominators && field_->is_rationals()) {
    mpz_class l = 1;
    for (const auto& t : terms_) l = lcm(l, t.coeff.rational().get_den());
    scale = FieldElement::from_mpq(field_, mpq_class(l));
  }
  std::string s;
  for (const auto& t : terms_) {
    FieldElement c = t.coeff * scale;
    bool negative = false;
    if (field_->is_rationals() && c.rational() < 0) {
      negative = true;
      c = -c;
    }
    std::string cs = c.to_string();
    bool needs_parens = cs.find('+') != std::string::npos;
    std::string mono;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += roster_->name(i);
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    std::string piece;
    if (mono.empty()) {
      piece = needs_parens ? "(" + cs + ")" : cs;
    } else if (c.is_one()) {
      piece = mono;
    } else {
      piece = (needs_parens ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (s.empty()) {
      s = negative ? "-" + piece : piece;
    } else {
      s += negative ? "-" + piece : "+" + piece;
    }
  }
  return s;
}

}  // namespace aca

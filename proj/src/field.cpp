#include "aca/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace aca {

int natural_compare(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  auto num_start = [](const std::string& s, std::size_t pos) {
    if (pos >= s.size()) return false;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) return true;
    return s[pos] == '-' && pos + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[pos + 1]));
  };
  while (i < a.size() && j < b.size()) {
    if (num_start(a, i) && num_start(b, j)) {
      long long x = 0, y = 0;
      bool nx = a[i] == '-', ny = b[j] == '-';
      if (nx) ++i;
      if (ny) ++j;
      while (i < a.size() && std::isdigit(static_cast<unsigned char>(a[i]))) x = x * 10 + (a[i++] - '0');
      while (j < b.size() && std::isdigit(static_cast<unsigned char>(b[j]))) y = y * 10 + (b[j++] - '0');
      if (nx) x = -x;
      if (ny) y = -y;
      if (x != y) return x < y ? -1 : 1;
    } else {
      if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
      ++i, ++j;
    }
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

namespace {

long long mod_norm(long long v, long long p) {
  v %= p;
  if (v < 0) v += p;
  return v;
}

long long mod_mul(long long a, long long b, long long p) { return (a * b) % p; }

long long mod_inv(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (r != 1) throw DomainError("not invertible mod " + std::to_string(p));
  return mod_norm(t, p);
}

bool is_prime_trial(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p[x] helpers on coefficient vectors (index = degree), trailing zeros trimmed.
using PolyFp = std::vector<long long>;

void trim(PolyFp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b, long long p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// Remainder of a by monic-normalizable b.
PolyFp poly_rem(PolyFp a, const PolyFp& b, long long p) {
  trim(a);
  long long lead_inv = mod_inv(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    long long c = mod_mul(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = mod_norm(a[shift + i] - c * b[i] % p, p);
    trim(a);
  }
  return a;
}

bool divides(const PolyFp& d, const PolyFp& f, long long p) { return poly_rem(f, d, p).empty(); }

// Irreducibility over F_p by exhaustive scan for monic factors of degree <= deg/2.
bool is_irreducible(const PolyFp& f, long long p) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  for (int d = 1; 2 * d <= deg; ++d) {
    // all monic degree-d polynomials: p^d of them
    unsigned long long count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<unsigned long long>(p);
    for (unsigned long long idx = 0; idx < count; ++idx) {
      PolyFp cand(d + 1, 0);
      cand[d] = 1;
      unsigned long long t = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = static_cast<long long>(t % p);
        t /= p;
      }
      if (divides(cand, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

FieldRef Field::rationals() {
  static FieldRef q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind = FieldKind::Rationals;
    return FieldRef(f);
  }();
  return q;
}

FieldRef Field::prime(long long p) {
  if (!is_prime_trial(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (p > (1LL << 31)) throw DomainError("prime too large for exact residue arithmetic");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind = FieldKind::Prime;
  f->p = p;
  f->k = 1;
  f->q = static_cast<unsigned long long>(p);
  return f;
}

FieldRef Field::extension(long long p, int k, std::vector<long long> modulus) {
  if (!is_prime_trial(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 2) throw DomainError("extension degree must be >= 2");
  if (k > 16) throw DomainError("extension degree too large for desk scale");
  if (modulus.size() != static_cast<std::size_t>(k) + 1)
    throw DomainError("modulus must list k+1 coefficients");
  for (auto& c : modulus) c = mod_norm(c, p);
  if (modulus.back() != 1) throw DomainError("modulus must be monic");
  if (!is_irreducible(modulus, p))
    throw DomainError("modulus is reducible over F_" + std::to_string(p));
  unsigned long long q = 1;
  for (int i = 0; i < k; ++i) {
    if (q > (1ULL << 62) / static_cast<unsigned long long>(p))
      throw DomainError("field size p^k too large");
    q *= static_cast<unsigned long long>(p);
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind = FieldKind::Extension;
  f->p = p;
  f->k = k;
  f->modulus = std::move(modulus);
  f->q = q;
  return f;
}

FieldRef Field::extension_default(long long p, int k) {
  unsigned long long count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<unsigned long long>(p);
  for (unsigned long long idx = 0; idx < count; ++idx) {
    std::vector<long long> mod(k + 1, 0);
    mod[k] = 1;
    unsigned long long t = idx;
    for (int i = 0; i < k; ++i) {
      mod[i] = static_cast<long long>(t % p);
      t /= p;
    }
    if (is_irreducible(mod, p)) return extension(p, k, std::move(mod));
  }
  throw DomainError("no irreducible modulus found");  // unreachable for k >= 1
}

FieldRef Field::parse(const std::string& text) {
  if (text == "Q" || text == "q") return rationals();
  auto caret = text.find('^');
  if (caret == std::string::npos) {
    try {
      return prime(std::stoll(text));
    } catch (const std::invalid_argument&) {
      throw DomainError("cannot parse field descriptor '" + text + "'");
    }
  }
  long long p = std::stoll(text.substr(0, caret));
  auto colon = text.find(':', caret);
  int k = std::stoi(text.substr(caret + 1, colon == std::string::npos ? std::string::npos : colon - caret - 1));
  if (colon == std::string::npos) return extension_default(p, k);
  std::vector<long long> mod;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) mod.push_back(std::stoll(item));
  return extension(p, k, std::move(mod));
}

std::string Field::to_string() const {
  switch (kind) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::Prime:
      return std::to_string(p);
    case FieldKind::Extension: {
      std::string s = std::to_string(p) + "^" + std::to_string(k) + ":";
      for (std::size_t i = 0; i < modulus.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(modulus[i]);
      }
      return s;
    }
  }
  return "?";
}

bool same_field(const Field& a, const Field& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FieldKind::Rationals) return true;
  return a.p == b.p && a.k == b.k && a.modulus == b.modulus;
}

FieldElement FieldElement::zero(const FieldRef& f) {
  if (f->is_rationals()) return FieldElement(f, mpq_class(0));
  return FieldElement(f, std::vector<long long>(f->k, 0));
}

FieldElement FieldElement::one(const FieldRef& f) { return from_integer(f, 1); }

FieldElement FieldElement::from_integer(const FieldRef& f, long long n) {
  if (f->is_rationals()) return FieldElement(f, mpq_class(static_cast<long>(n)));
  std::vector<long long> c(f->k, 0);
  c[0] = mod_norm(n, f->p);
  return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_mpq(const FieldRef& f, const mpq_class& v) {
  if (f->is_rationals()) {
    mpq_class c = v;
    c.canonicalize();
    return FieldElement(f, std::move(c));
  }
  // reduce numerator * den^{-1} mod p
  mpz_class pz(static_cast<unsigned long int>(f->p));
  mpz_class num = v.get_num() % pz, den = v.get_den() % pz;
  long long n = mod_norm(num.get_si(), f->p);
  long long d = mod_norm(den.get_si(), f->p);
  if (d == 0) throw DomainError("rational has zero denominator mod p");
  return from_integer(f, mod_mul(n, mod_inv(d, f->p), f->p));
}

FieldElement FieldElement::from_coeffs(const FieldRef& f, std::vector<long long> coeffs) {
  if (f->is_rationals()) throw DomainError("coefficient vectors require a finite field");
  if (coeffs.size() > static_cast<std::size_t>(f->k)) {
    // reduce by the modulus
    for (auto& c : coeffs) c = mod_norm(c, f->p);
    PolyFp r = poly_rem(coeffs, f->modulus, f->p);
    r.resize(f->k, 0);
    return FieldElement(f, std::move(r));
  }
  coeffs.resize(f->k, 0);
  for (auto& c : coeffs) c = mod_norm(c, f->p);
  return FieldElement(f, std::move(coeffs));
}

FieldElement FieldElement::generator(const FieldRef& f) {
  if (f->kind != FieldKind::Extension) throw DomainError("generator w exists only in extension fields");
  std::vector<long long> c(f->k, 0);
  c[1] = 1;
  return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_index(const FieldRef& f, unsigned long long idx) {
  if (!f->is_finite()) throw DomainError("index enumeration requires a finite field");
  std::vector<long long> c(f->k, 0);
  for (int i = 0; i < f->k; ++i) {
    c[i] = static_cast<long long>(idx % static_cast<unsigned long long>(f->p));
    idx /= static_cast<unsigned long long>(f->p);
  }
  return FieldElement(f, std::move(c));
}

unsigned long long FieldElement::index() const {
  const auto& c = coeffs();
  unsigned long long idx = 0;
  for (std::size_t i = c.size(); i-- > 0;)
    idx = idx * static_cast<unsigned long long>(field_->p) + static_cast<unsigned long long>(c[i]);
  return idx;
}

bool FieldElement::is_zero() const {
  if (field_->is_rationals()) return rational() == 0;
  for (long long c : coeffs())
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (field_->is_rationals()) return rational() == 1;
  const auto& c = coeffs();
  if (c[0] != 1) return false;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

void FieldElement::check_same(const FieldElement& o) const {
  if (is_null() || o.is_null()) throw DomainError("null field element");
  if (!same_field(field_, o.field_)) throw DomainError("field mismatch");
}

FieldElement FieldElement::operator-() const {
  if (field_->is_rationals()) return FieldElement(field_, mpq_class(-rational()));
  std::vector<long long> c = coeffs();
  for (auto& x : c) x = mod_norm(-x, field_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  if (field_->is_rationals()) return FieldElement(field_, mpq_class(rational() + o.rational()));
  std::vector<long long> c = coeffs();
  const auto& d = o.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_norm(c[i] + d[i], field_->p);
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  if (field_->is_rationals()) return FieldElement(field_, mpq_class(rational() * o.rational()));
  if (field_->kind == FieldKind::Prime)
    return FieldElement(field_, std::vector<long long>{mod_mul(coeffs()[0], o.coeffs()[0], field_->p)});
  PolyFp prod = poly_mul(coeffs(), o.coeffs(), field_->p);
  PolyFp r = poly_rem(prod, field_->modulus, field_->p);
  r.resize(field_->k, 0);
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (field_->is_rationals()) return FieldElement(field_, mpq_class(1 / rational()));
  if (field_->kind == FieldKind::Prime)
    return FieldElement(field_, std::vector<long long>{mod_inv(coeffs()[0], field_->p)});
  // extended Euclid in F_p[x] against the modulus
  long long p = field_->p;
  PolyFp r0 = field_->modulus, r1 = coeffs();
  trim(r1);
  PolyFp t0 = {}, t1 = {1};
  while (!r1.empty()) {
    // quotient of r0 by r1
    PolyFp q;
    PolyFp rem = r0;
    long long li = mod_inv(r1.back(), p);
    while (rem.size() >= r1.size() && !rem.empty()) {
      long long c = mod_mul(rem.back(), li, p);
      std::size_t shift = rem.size() - r1.size();
      if (q.size() < shift + 1) q.resize(shift + 1, 0);
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = mod_norm(rem[shift + i] - c * r1[i] % p, p);
      trim(rem);
    }
    PolyFp t2 = t0;  // t2 = t0 - q*t1
    PolyFp qt = poly_mul(q, t1, p);
    if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
    for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = mod_norm(t2[i] - qt[i], p);
    trim(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is the gcd, a nonzero constant since the modulus is irreducible
  long long scale = mod_inv(r0[0], p);
  for (auto& c : t0) c = mod_mul(c, scale, p);
  t0.resize(field_->k, 0);
  return FieldElement(field_, std::move(t0));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return *this * o.inverse();
}

FieldElement FieldElement::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement base = *this, acc = one(field_);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (is_null() || o.is_null()) return is_null() && o.is_null();
  if (!same_field(field_, o.field_)) return false;
  if (field_->is_rationals()) return rational() == o.rational();
  return coeffs() == o.coeffs();
}

bool FieldElement::operator<(const FieldElement& o) const {
  check_same(o);
  if (field_->is_rationals()) return rational() < o.rational();
  return index() < o.index();
}

const mpq_class& FieldElement::rational() const {
  if (auto* v = std::get_if<mpq_class>(&v_)) return *v;
  throw DomainError("not a rational value");
}

const std::vector<long long>& FieldElement::coeffs() const {
  if (auto* v = std::get_if<std::vector<long long>>(&v_)) return *v;
  throw DomainError("not a finite-field value");
}

std::string FieldElement::to_string() const {
  if (is_null()) return "<null>";
  if (field_->is_rationals()) return rational().get_str();
  if (field_->kind == FieldKind::Prime) return std::to_string(coeffs()[0]);
  const auto& c = coeffs();
  std::string s;
  for (int i = field_->k - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
    } else {
      if (c[i] != 1) s += std::to_string(c[i]) + "*";
      s += "w";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace aca

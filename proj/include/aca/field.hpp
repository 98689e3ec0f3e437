#ifndef ACA_FIELD_HPP
#define ACA_FIELD_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aca/common.hpp"

namespace aca {

class Field;
using FieldRef = std::shared_ptr<const Field>;

enum class FieldKind { Rationals, Prime, Extension };

// Exact ground field: Q, F_p, or F_{p^k} = F_p[w]/(modulus).
class Field {
 public:
  FieldKind kind;
  long long p = 0;                  // characteristic; 0 for Q
  int k = 1;                        // extension degree; 1 for prime fields
  std::vector<long long> modulus;   // monic, length k+1, coefficients in [0,p); empty unless extension
  unsigned long long q = 0;         // p^k; 0 for Q

  static FieldRef rationals();
  static FieldRef prime(long long p);
  static FieldRef extension(long long p, int k, std::vector<long long> modulus);
  // First irreducible monic modulus of degree k in coefficient-scan order.
  static FieldRef extension_default(long long p, int k);
  // "Q" | "p" | "p^k" | "p^k:c0,c1,...,ck"  (ck must be 1)
  static FieldRef parse(const std::string& text);

  bool is_rationals() const { return kind == FieldKind::Rationals; }
  bool is_finite() const { return kind != FieldKind::Rationals; }
  std::string to_string() const;

 private:
  Field() = default;
};

bool same_field(const Field& a, const Field& b);
inline bool same_field(const FieldRef& a, const FieldRef& b) { return same_field(*a, *b); }

// A scalar of some Field. Rationals carry an exact mpq; finite-field values a
// coefficient vector of length k over F_p (length 1 for prime fields).
class FieldElement {
 public:
  FieldElement() = default;  // detached null; only assignment is legal

  static FieldElement zero(const FieldRef& f);
  static FieldElement one(const FieldRef& f);
  static FieldElement from_integer(const FieldRef& f, long long n);
  static FieldElement from_mpq(const FieldRef& f, const mpq_class& v);
  static FieldElement from_coeffs(const FieldRef& f, std::vector<long long> coeffs);
  static FieldElement generator(const FieldRef& f);  // w, extension fields only
  // Finite fields enumerate as indices 0..q-1: index = sum coeffs[i]*p^i.
  static FieldElement from_index(const FieldRef& f, unsigned long long idx);
  unsigned long long index() const;

  const FieldRef& field() const { return field_; }
  bool is_null() const { return !field_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;  // throws DomainError on zero divisor
  FieldElement inverse() const;
  FieldElement pow(long long e) const;  // e >= 0, or any e for invertible base

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  // Total order used for deterministic sorting: rationals by value, finite
  // fields by index.
  bool operator<(const FieldElement& o) const;

  const mpq_class& rational() const;
  const std::vector<long long>& coeffs() const;

  std::string to_string() const;

 private:
  FieldElement(FieldRef f, mpq_class v) : field_(std::move(f)), v_(std::move(v)) {}
  FieldElement(FieldRef f, std::vector<long long> c) : field_(std::move(f)), v_(std::move(c)) {}
  void check_same(const FieldElement& o) const;

  FieldRef field_;
  std::variant<std::monostate, mpq_class, std::vector<long long>> v_;
};

}  // namespace aca

#endif

#ifndef ACA_COMMON_HPP
#define ACA_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace aca {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Misused API: dimension/field mismatches, invalid constructions, bad input.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Text input rejected; carries a position for diagnostics.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

// Work budget ran out. Distinct from mathematical failure: the computation
// was cut short, nothing was decided. `progress` describes how far it got.
struct BudgetError : Error {
  BudgetError(const std::string& stage, long long used, long long limit)
      : Error("work budget exhausted in " + stage + " (" + std::to_string(used) + "/" +
              std::to_string(limit) + " steps)"),
        stage(stage),
        used(used),
        limit(limit) {}
  std::string stage;
  long long used;
  long long limit;
};

// Caller-supplied step budget for the long-running operations (Groebner,
// enumeration, searches). Charged in units roughly proportional to work.
class Budget {
 public:
  static constexpr long long kDefault = 400'000'000;

  explicit Budget(long long steps = kDefault) : limit_(steps) {}

  void charge(long long n, const char* stage) {
    used_ += n;
    if (used_ > limit_) throw BudgetError(stage, used_, limit_);
  }
  bool would_exceed(long long n) const { return used_ + n > limit_; }
  long long used() const { return used_; }
  long long limit() const { return limit_; }

 private:
  long long limit_;
  long long used_ = 0;
};

// Operations take an optional Budget*; this supplies a scratch default.
inline Budget& budget_or(Budget* b, Budget& fallback) { return b ? *b : fallback; }

// Name comparison with numeric runs compared as integers, so x[2][1] sorts
// before x[10][1] and x[-1][1] before x[0][1]. Variable rosters are always
// kept sorted under this order.
int natural_compare(const std::string& a, const std::string& b);
inline bool natural_less(const std::string& a, const std::string& b) {
  return natural_compare(a, b) < 0;
}

// Deterministic RNG used only to generate test patterns, never results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  // Uniform in [0, n). Avoids std distributions: their output is not
  // specified across implementations.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw DomainError("Rng::below(0)");
    std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= lim);
    return v % n;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace aca

#endif

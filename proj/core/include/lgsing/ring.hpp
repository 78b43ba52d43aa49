#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lgsing {

/// Exact field element. Over a prime field the value is kept as an integer in [0, p).
using Scalar = mpq_class;

/// The coefficient field: either the rationals or a prime field F_p.
class Field {
 public:
  static Field rationals() { return Field(); }
  /// Throws PreconditionError unless p is prime.
  static Field prime(const mpz_class& p);

  bool is_prime_field() const { return p_ != 0; }
  /// 0 for the rationals.
  const mpz_class& characteristic() const { return p_; }

  /// Reduces an arbitrary rational into canonical form. Over F_p throws
  /// ParseError when the denominator is divisible by p.
  Scalar normalize(const Scalar& a) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;

  std::string to_string(const Scalar& a) const;
  std::string name() const;

  bool operator==(const Field& other) const { return p_ == other.p_; }

 private:
  Field() = default;
  mpz_class p_{0};
};

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

/// Descriptor of a coefficient ring: a field, or a polynomial ring over a field.
/// Polynomial rings over polynomial rings are not representable, which caps the
/// nesting depth at two.
class RingSpec {
 public:
  enum class Kind { Rationals, PrimeField, Polynomial };

  static Ring field(const Field& f);
  /// Validates the variable names ([a-zA-Z][a-zA-Z0-9_]*, distinct).
  static Ring polynomial(const Field& base, std::vector<std::string> vars);

  Kind kind() const { return kind_; }
  const Field& base() const { return base_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  std::optional<std::size_t> var_index(std::string_view name) const;

  std::string to_string() const;

  bool operator==(const RingSpec& other) const {
    return kind_ == other.kind_ && base_ == other.base_ && vars_ == other.vars_;
  }

 private:
  RingSpec(Kind kind, Field base, std::vector<std::string> vars)
      : kind_(kind), base_(std::move(base)), vars_(std::move(vars)) {}

  Kind kind_;
  Field base_;
  std::vector<std::string> vars_;
};

bool same_ring(const Ring& a, const Ring& b);
bool is_valid_variable_name(std::string_view name);

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exps;
  Scalar coeff;

  bool operator==(const Term& other) const { return exps == other.exps && coeff == other.coeff; }
};

/// Graded lexicographic comparison; true when a is strictly greater than b.
bool grlex_greater(const Exponents& a, const Exponents& b);

/// Polynomial in canonical form: terms sorted by decreasing grlex order,
/// no zero coefficients, coefficients normalized in the base field.
class Poly {
 public:
  explicit Poly(Ring ring);

  static Poly constant(Ring ring, const Scalar& c);
  static Poly variable(Ring ring, std::size_t index);
  /// Accepts terms in any order with repeats; normalizes.
  static Poly from_terms(Ring ring, std::vector<Term> terms);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  Scalar constant_term() const;
  std::uint32_t total_degree() const;

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly scaled(const Scalar& c) const;
  Poly pow(unsigned e) const;

  /// Re-expresses the polynomial in `target`, sending variable i to variable var_map[i].
  Poly lift(const Ring& target, const std::vector<std::size_t>& var_map) const;

  bool operator==(const Poly& other) const;
  bool operator!=(const Poly& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  Poly(Ring ring, std::vector<Term> sorted_terms) : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  Ring ring_;
  std::vector<Term> terms_;
};

/// Parses the polynomial grammar: integer and fraction literals, variables,
/// + - * ^ (nonnegative integer exponents), parentheses.
Poly parse_poly(std::string_view text, const Ring& ring);

/// An assignment of a base-field value to every variable of a ring.
class Point {
 public:
  Point(Ring ring, std::vector<Scalar> values);
  /// Parses "x=0,y=1/2". Every variable must be assigned exactly once.
  static Point parse(std::string_view text, const Ring& ring);
  static Point from_map(const Ring& ring, const std::map<std::string, std::string>& values);
  static Point origin(const Ring& ring);

  const Ring& ring() const { return ring_; }
  const std::vector<Scalar>& values() const { return values_; }
  std::string to_string() const;

  bool operator==(const Point& other) const {
    return same_ring(ring_, other.ring_) && values_ == other.values_;
  }

 private:
  Ring ring_;
  std::vector<Scalar> values_;
};

Scalar evaluate(const Poly& p, const Point& pt);

}  // namespace lgsing

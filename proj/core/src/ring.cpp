#include "lgsing/ring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "lgsing/error.hpp"

namespace lgsing {

// ---------------------------------------------------------------------------
// Field

Field Field::prime(const mpz_class& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    throw PreconditionError("field characteristic " + p.get_str() + " is not prime");
  }
  Field f;
  f.p_ = p;
  return f;
}

Scalar Field::normalize(const Scalar& a) const {
  if (p_ == 0) {
    Scalar r(a);
    r.canonicalize();
    return r;
  }
  mpz_class num = a.get_num() % p_;
  if (num < 0) num += p_;
  mpz_class den = a.get_den() % p_;
  if (den == 0) {
    throw ParseError("coefficient " + a.get_str() + " is not in the base field " + name());
  }
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
    num = (num * inv) % p_;
  }
  return Scalar(num);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= p_) r -= p_;
  return Scalar(r);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += p_;
  return Scalar(r);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a * b;
  return Scalar(mpz_class(a.get_num() * b.get_num()) % p_);
}

Scalar Field::neg(const Scalar& a) const {
  if (p_ == 0) return -a;
  if (a == 0) return a;
  return Scalar(p_ - a.get_num());
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw PreconditionError("division by zero in " + name());
  if (p_ == 0) return 1 / a;
  mpz_class r;
  mpz_class v = a.get_num();
  mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
  return Scalar(r);
}

std::string Field::to_string(const Scalar& a) const { return a.get_str(); }

std::string Field::name() const { return p_ == 0 ? std::string("QQ") : "GF(" + p_.get_str() + ")"; }

// ---------------------------------------------------------------------------
// RingSpec

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Ring RingSpec::field(const Field& f) {
  Kind kind = f.is_prime_field() ? Kind::PrimeField : Kind::Rationals;
  return Ring(new RingSpec(kind, f, {}));
}

Ring RingSpec::polynomial(const Field& base, std::vector<std::string> vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!is_valid_variable_name(v)) throw ParseError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw ParseError("duplicate variable name '" + v + "'");
  }
  return Ring(new RingSpec(Kind::Polynomial, base, std::move(vars)));
}

std::optional<std::size_t> RingSpec::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

std::string RingSpec::to_string() const {
  if (kind_ != Kind::Polynomial) return base_.name();
  std::string s = base_.name() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ",";
    s += vars_[i];
  }
  return s + "]";
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Poly

bool grlex_greater(const Exponents& a, const Exponents& b) {
  std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return b < a;
}

namespace {

struct GrlexDesc {
  bool operator()(const Term& a, const Term& b) const { return grlex_greater(a.exps, b.exps); }
};

// Sorts and combines like terms; drops zeros. Coefficients must already be normalized.
std::vector<Term> canonicalize(const Field& field, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), GrlexDesc{});
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff = field.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return out;
}

void require_same_ring(const Ring& a, const Ring& b, const char* op) {
  if (!same_ring(a, b)) {
    throw PreconditionError(std::string("ring mismatch in ") + op + ": " + a->to_string() + " vs " +
                            b->to_string());
  }
}

}  // namespace

Poly::Poly(Ring ring) : ring_(std::move(ring)) {}

Poly Poly::constant(Ring ring, const Scalar& c) {
  Scalar v = ring->base().normalize(c);
  std::vector<Term> terms;
  if (v != 0) terms.push_back(Term{Exponents(ring->num_vars(), 0), v});
  return Poly(std::move(ring), std::move(terms));
}

Poly Poly::variable(Ring ring, std::size_t index) {
  if (index >= ring->num_vars()) throw PreconditionError("variable index out of range");
  Exponents e(ring->num_vars(), 0);
  e[index] = 1;
  std::vector<Term> terms{Term{std::move(e), Scalar(1)}};
  return Poly(std::move(ring), std::move(terms));
}

Poly Poly::from_terms(Ring ring, std::vector<Term> terms) {
  for (auto& t : terms) {
    if (t.exps.size() != ring->num_vars()) throw PreconditionError("exponent vector length mismatch");
    t.coeff = ring->base().normalize(t.coeff);
  }
  auto canon = canonicalize(ring->base(), std::move(terms));
  return Poly(std::move(ring), std::move(canon));
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].coeff == 1 && is_constant(); }

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_[0].exps;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Scalar Poly::constant_term() const {
  if (terms_.empty()) return Scalar(0);
  const auto& last = terms_.back();  // grlex smallest
  bool is_const = std::all_of(last.exps.begin(), last.exps.end(), [](std::uint32_t x) { return x == 0; });
  return is_const ? last.coeff : Scalar(0);
}

std::uint32_t Poly::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.front().exps;
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

Poly Poly::operator+(const Poly& other) const {
  Poly r(*this);
  r += other;
  return r;
}

Poly Poly::operator-(const Poly& other) const {
  Poly r(*this);
  r -= other;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_ring(ring_, other.ring_, "addition");
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  const Field& field = ring_->base();
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() || (i < terms_.size() && grlex_greater(terms_[i].exps, other.terms_[j].exps))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || grlex_greater(other.terms_[j].exps, terms_[i].exps)) {
      out.push_back(other.terms_[j++]);
    } else {
      Scalar c = field.add(terms_[i].coeff, other.terms_[j].coeff);
      if (c != 0) out.push_back(Term{std::move(terms_[i].exps), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly Poly::operator-() const {
  std::vector<Term> t = terms_;
  const Field& field = ring_->base();
  for (auto& term : t) term.coeff = field.neg(term.coeff);
  return Poly(ring_, std::move(t));
}

Poly Poly::operator*(const Poly& other) const {
  require_same_ring(ring_, other.ring_, "multiplication");
  if (terms_.empty() || other.terms_.empty()) return Poly(ring_);
  const Field& field = ring_->base();
  std::vector<Term> prods;
  prods.reserve(terms_.size() * other.terms_.size());
  const std::size_t nv = ring_->num_vars();
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Exponents e(nv);
      for (std::size_t v = 0; v < nv; ++v) e[v] = a.exps[v] + b.exps[v];
      prods.push_back(Term{std::move(e), field.mul(a.coeff, b.coeff)});
    }
  }
  if (terms_.size() == 1 || other.terms_.size() == 1) {
    // Multiplying by a monomial preserves the order and cannot create cancellations.
    return Poly(ring_, std::move(prods));
  }
  return Poly(ring_, canonicalize(field, std::move(prods)));
}

Poly Poly::scaled(const Scalar& c) const {
  const Field& field = ring_->base();
  Scalar v = field.normalize(c);
  if (v == 0) return Poly(ring_);
  std::vector<Term> t = terms_;
  for (auto& term : t) term.coeff = field.mul(term.coeff, v);
  return Poly(ring_, std::move(t));
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(ring_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::lift(const Ring& target, const std::vector<std::size_t>& var_map) const {
  if (!(target->base() == ring_->base())) throw PreconditionError("lift: base fields differ");
  if (var_map.size() != ring_->num_vars()) throw PreconditionError("lift: variable map has wrong length");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target->num_vars(), 0);
    for (std::size_t v = 0; v < var_map.size(); ++v) e[var_map[v]] = t.exps[v];
    out.push_back(Term{std::move(e), t.coeff});
  }
  return Poly(target, canonicalize(target->base(), std::move(out)));
}

bool Poly::operator==(const Poly& other) const { return same_ring(ring_, other.ring_) && terms_ == other.terms_; }

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  const Field& field = ring_->base();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool negative = !field.is_prime_field() && c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      if (t.exps[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->vars()[v];
      if (t.exps[v] > 1) mono += "^" + std::to_string(t.exps[v]);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << "*" << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      mpz_class e = integer();
      if (e > std::numeric_limits<unsigned>::max()) throw ParseError("exponent too large", start);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected nonnegative integer", start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Poly primary() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      Scalar value(integer());
      if (accept('/')) {
        mpz_class den = integer();
        if (den == 0) throw ParseError("zero denominator", start);
        value = Scalar(value.get_num(), den);
        value.canonicalize();
      }
      try {
        return Poly::constant(ring_, value);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), start);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_->var_index(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Poly::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

Scalar parse_scalar(std::string_view text, const Field& field) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ParseError("empty value");
  Scalar v;
  try {
    v = Scalar(s);
  } catch (const std::invalid_argument&) {
    throw ParseError("invalid field element '" + s + "'");
  }
  if (v.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  v.canonicalize();
  return field.normalize(v);
}

}  // namespace

Poly parse_poly(std::string_view text, const Ring& ring) { return PolyParser(text, ring).parse(); }

// ---------------------------------------------------------------------------
// Point

Point::Point(Ring ring, std::vector<Scalar> values) : ring_(std::move(ring)), values_(std::move(values)) {
  if (values_.size() != ring_->num_vars()) throw PreconditionError("point does not assign every variable");
  for (auto& v : values_) v = ring_->base().normalize(v);
}

Point Point::from_map(const Ring& ring, const std::map<std::string, std::string>& values) {
  std::vector<std::optional<Scalar>> slots(ring->num_vars());
  for (const auto& [name, text] : values) {
    auto idx = ring->var_index(name);
    if (!idx) throw ParseError("point assigns unknown variable '" + name + "'");
    slots[*idx] = parse_scalar(text, ring->base());
  }
  std::vector<Scalar> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw PreconditionError("point is missing a value for variable '" + ring->vars()[i] + "'");
    out.push_back(*slots[i]);
  }
  return Point(ring, std::move(out));
}

Point Point::parse(std::string_view text, const Ring& ring) {
  std::map<std::string, std::string> values;
  if (text.find_first_not_of(" \t\n") == std::string_view::npos) return from_map(ring, values);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected name=value in point", start);
    std::string name;
    for (char c : item.substr(0, eq)) {
      if (!std::isspace(static_cast<unsigned char>(c))) name += c;
    }
    if (!values.emplace(name, std::string(item.substr(eq + 1))).second) {
      throw ParseError("variable '" + name + "' assigned twice", start);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_map(ring, values);
}

Point Point::origin(const Ring& ring) { return Point(ring, std::vector<Scalar>(ring->num_vars(), Scalar(0))); }

std::string Point::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ",";
    s += ring_->vars()[i] + "=" + values_[i].get_str();
  }
  return s;
}

Scalar evaluate(const Poly& p, const Point& pt) {
  if (!same_ring(p.ring(), pt.ring())) {
    throw PreconditionError("point belongs to " + pt.ring()->to_string() + ", polynomial to " +
                            p.ring()->to_string());
  }
  const Field& field = p.ring()->base();
  Scalar sum(0);
  for (const auto& t : p.terms()) {
    Scalar term = t.coeff;
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      for (std::uint32_t k = 0; k < t.exps[v]; ++k) term = field.mul(term, pt.values()[v]);
    }
    sum = field.add(sum, term);
  }
  return sum;
}

}  // namespace lgsing

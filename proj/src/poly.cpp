#include "qfilt/poly.hpp"

#include <algorithm>
#include <cctype>

#include "qfilt/error.hpp"

namespace qfilt {

namespace {

void require_same(unsigned p, unsigned q) {
  if (p != q) throw Error("ring mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// PrimePoly

PrimePoly::PrimePoly(unsigned p, std::vector<Coeff> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw Error("polynomial modulus must be a prime");
  for (auto& c : c_) c %= p_;
  trim();
}

void PrimePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PrimePoly PrimePoly::monic_from_index(unsigned p, int degree, std::uint64_t index) {
  std::vector<Coeff> c(static_cast<std::size_t>(degree) + 1, 0);
  c[static_cast<std::size_t>(degree)] = 1;
  // The most significant digit is the coefficient just below the leading one.
  for (int i = 0; i < degree; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Coeff>(index % p);
    index /= p;
  }
  return PrimePoly(p, std::move(c));
}

std::uint32_t inverse_mod(std::uint32_t a, unsigned p) {
  a %= p;
  if (a == 0) throw Error("division by zero in F_" + std::to_string(p));
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

PrimePoly PrimePoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inverse_mod(lead(), p_));
}

PrimePoly PrimePoly::scaled(Coeff s) const {
  std::vector<Coeff> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    c[i] = static_cast<Coeff>((std::uint64_t{c_[i]} * s) % p_);
  return PrimePoly(p_, std::move(c));
}

PrimePoly::Coeff PrimePoly::eval(Coeff at) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * at + *it) % p_;
  return static_cast<Coeff>(acc);
}

PrimePoly& PrimePoly::operator+=(const PrimePoly& o) {
  require_same(p_, o.p_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % p_;
  trim();
  return *this;
}

PrimePoly& PrimePoly::operator-=(const PrimePoly& o) {
  require_same(p_, o.p_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = (c_[i] + p_ - o.c_[i]) % p_;
  trim();
  return *this;
}

PrimePoly operator*(const PrimePoly& a, const PrimePoly& b) {
  require_same(a.p_, b.p_);
  if (a.is_zero() || b.is_zero()) return PrimePoly::zero(a.p_);
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      acc[i + j] = (acc[i + j] + std::uint64_t{a.c_[i]} * b.c_[j]) % a.p_;
  std::vector<PrimePoly::Coeff> c(acc.begin(), acc.end());
  return PrimePoly(a.p_, std::move(c));
}

PrimePoly PrimePoly::pow(unsigned e) const {
  PrimePoly result = constant(p_, 1);
  PrimePoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::strong_ordering operator<=>(const PrimePoly& a, const PrimePoly& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string PrimePoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Coeff c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += 'x';
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<PrimePoly, PrimePoly> divmod(const PrimePoly& a, const PrimePoly& b) {
  require_same(a.modulus(), b.modulus());
  if (b.is_zero()) throw Error("polynomial division by zero");
  const unsigned p = a.modulus();
  if (a.degree() < b.degree()) return {PrimePoly::zero(p), a};
  std::vector<std::uint32_t> rem(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const std::uint32_t inv = inverse_mod(bc.back(), p);
  std::vector<std::uint32_t> quot(rem.size() - db, 0);
  for (std::size_t k = rem.size(); k-- > db;) {
    const std::uint32_t q = static_cast<std::uint32_t>((std::uint64_t{rem[k]} * inv) % p);
    quot[k - db] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      const std::uint64_t sub = (std::uint64_t{q} * bc[j]) % p;
      rem[k - db + j] = static_cast<std::uint32_t>((rem[k - db + j] + p - sub) % p);
    }
  }
  rem.resize(db);
  return {PrimePoly(p, std::move(quot)), PrimePoly(p, std::move(rem))};
}

PrimePoly operator/(const PrimePoly& a, const PrimePoly& b) { return divmod(a, b).first; }
PrimePoly operator%(const PrimePoly& a, const PrimePoly& b) { return divmod(a, b).second; }

PrimePoly gcd(PrimePoly a, PrimePoly b) {
  require_same(a.modulus(), b.modulus());
  while (!b.is_zero()) {
    PrimePoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PrimePoly lcm(const PrimePoly& a, const PrimePoly& b) {
  if (a.is_zero() || b.is_zero()) throw Error("lcm of the zero polynomial");
  return ((a * b) / gcd(a, b)).monic();
}

bool divides(const PrimePoly& d, const PrimePoly& f) {
  if (d.is_zero()) return f.is_zero();
  return (f % d).is_zero();
}

bool is_irreducible(const PrimePoly& f) {
  if (f.degree() < 1) return false;
  const unsigned p = f.modulus();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k)
      if (divides(PrimePoly::monic_from_index(p, d, k), f)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FactoredPoly

FactoredPoly::FactoredPoly(std::map<std::string, unsigned> factors) {
  for (auto& [label, mult] : factors) {
    if (label.empty()) throw Error("empty point label");
    if (mult > 0) f_.emplace(label, mult);
  }
}

unsigned FactoredPoly::degree() const noexcept {
  unsigned d = 0;
  for (const auto& [_, m] : f_) d += m;
  return d;
}

unsigned FactoredPoly::multiplicity(const std::string& label) const {
  auto it = f_.find(label);
  return it == f_.end() ? 0 : it->second;
}

std::string FactoredPoly::to_string() const {
  if (f_.empty()) return "1";
  std::string out;
  for (const auto& [label, mult] : f_) {
    if (!out.empty()) out += '*';
    out += label == "0" ? std::string("x") : "(x-" + label + ")";
    if (mult > 1) out += "^" + std::to_string(mult);
  }
  return out;
}

FactoredPoly operator*(const FactoredPoly& a, const FactoredPoly& b) {
  auto f = a.f_;
  for (const auto& [label, mult] : b.f_) f[label] += mult;
  return FactoredPoly(std::move(f));
}

FactoredPoly FactoredPoly::pow(unsigned e) const {
  auto f = f_;
  for (auto& [_, m] : f) m *= e;
  return FactoredPoly(std::move(f));
}

std::strong_ordering operator<=>(const FactoredPoly& a, const FactoredPoly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.f_ <=> b.f_;
}

FactoredPoly gcd(const FactoredPoly& a, const FactoredPoly& b) {
  std::map<std::string, unsigned> f;
  for (const auto& [label, mult] : a.factors())
    if (unsigned m = std::min(mult, b.multiplicity(label))) f.emplace(label, m);
  return FactoredPoly(std::move(f));
}

FactoredPoly lcm(const FactoredPoly& a, const FactoredPoly& b) {
  auto f = a.factors();
  for (const auto& [label, mult] : b.factors()) f[label] = std::max(f[label], mult);
  return FactoredPoly(std::move(f));
}

bool divides(const FactoredPoly& d, const FactoredPoly& f) {
  for (const auto& [label, mult] : d.factors())
    if (f.multiplicity(label) < mult) return false;
  return true;
}

FactoredPoly exact_quotient(const FactoredPoly& f, const FactoredPoly& d) {
  if (!divides(d, f)) throw Error(d.to_string() + " does not divide " + f.to_string());
  auto q = f.factors();
  for (const auto& [label, mult] : d.factors()) q[label] -= mult;
  return FactoredPoly(std::move(q));
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(PrimePoly p) : field_(BaseField::prime(p.modulus())), rep_(std::move(p)) {
  if (prime().is_zero()) throw Error("Poly must be nonzero");
}

Poly::Poly(BaseField field, FactoredPoly f) : field_(std::move(field)), rep_(std::move(f)) {
  if (!field_.is_symbolic()) throw Error("factored form requires a symbolic field");
}

int Poly::degree() const {
  return is_prime_field() ? prime().degree() : static_cast<int>(factored().degree());
}

bool Poly::is_one() const { return is_prime_field() ? prime().is_one() : factored().is_one(); }
bool Poly::is_monic() const { return is_prime_field() ? prime().is_monic() : true; }
Poly Poly::monic() const { return is_prime_field() ? Poly(prime().monic()) : *this; }
std::string Poly::to_string() const {
  return is_prime_field() ? prime().to_string() : factored().to_string();
}

namespace {

void require_same(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw Error("ring mismatch");
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (a.is_prime_field()) return Poly(a.prime() * b.prime());
  return Poly(a.field_, a.factored() * b.factored());
}

Poly Poly::pow(unsigned e) const {
  if (is_prime_field()) return Poly(prime().pow(e));
  return Poly(field_, factored().pow(e));
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.field_ <=> b.field_; c != 0) return c;
  if (a.is_prime_field()) return a.prime() <=> b.prime();
  return a.factored() <=> b.factored();
}

Poly gcd(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (a.is_prime_field()) return Poly(gcd(a.prime(), b.prime()));
  return Poly(a.field(), gcd(a.factored(), b.factored()));
}

Poly lcm(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (a.is_prime_field()) return Poly(lcm(a.prime(), b.prime()));
  return Poly(a.field(), lcm(a.factored(), b.factored()));
}

bool divides(const Poly& d, const Poly& f) {
  require_same(d, f);
  if (d.is_prime_field()) return divides(d.prime(), f.prime());
  return divides(d.factored(), f.factored());
}

Poly exact_quotient(const Poly& f, const Poly& d) {
  require_same(d, f);
  if (d.is_prime_field()) {
    auto [q, r] = divmod(f.prime(), d.prime());
    if (!r.is_zero()) throw Error(d.to_string() + " does not divide " + f.to_string());
    return Poly(q);
  }
  return Poly(f.field(), exact_quotient(f.factored(), d.factored()));
}

Poly one(const BaseField& field) {
  if (field.is_prime_field()) return Poly(PrimePoly::constant(field.characteristic(), 1));
  return Poly(field, FactoredPoly{});
}

// ---------------------------------------------------------------------------
// factor

Factorization factor(const Poly& f, const Limits& limits) {
  Factorization out;
  if (!f.is_prime_field()) {
    for (const auto& [label, mult] : f.factored().factors())
      out.factors.push_back({Poly(f.field(), FactoredPoly::linear(label)), mult});
    return out;
  }
  const PrimePoly& g0 = f.prime();
  if (g0.degree() > static_cast<int>(limits.max_factor_degree))
    throw Error("degree " + std::to_string(g0.degree()) + " exceeds factorization bound " +
                std::to_string(limits.max_factor_degree));
  const unsigned p = g0.modulus();
  out.unit = g0.lead();
  PrimePoly g = g0.monic();
  std::uint64_t trials = 0;
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count && 2 * d <= g.degree(); ++k) {
      if (++trials > limits.max_trial_divisions) throw Error("factorization too large");
      // Divisors of degree d found here are irreducible: every smaller factor
      // has already been divided out.
      const PrimePoly h = PrimePoly::monic_from_index(p, d, k);
      unsigned mult = 0;
      for (;;) {
        auto [q, r] = divmod(g, h);
        if (!r.is_zero()) break;
        g = std::move(q);
        ++mult;
      }
      if (mult) out.factors.push_back({Poly(h), mult});
    }
  }
  // What remains has no factor of degree <= deg/2, so it is irreducible.
  if (g.degree() >= 1) out.factors.push_back({Poly(g), 1});
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return a.factor < b.factor; });
  return out;
}

Poly expand(const Factorization& f, const BaseField& field) {
  Poly acc = one(field);
  for (const auto& [fac, mult] : f.factors) acc = acc * fac.pow(mult);
  if (field.is_prime_field()) return Poly(acc.prime().scaled(f.unit));
  return acc;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_ws();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a number");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[i_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++i_;
    }
    return v;
  }
  std::string label() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    if (start == i_) fail("expected a point label");
    return std::string(s_.substr(start, i_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse polynomial '" + std::string(s_) + "': " + what, 1, i_ + 1);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

class PrimeParser {
 public:
  PrimeParser(std::string_view s, unsigned p) : cur_(s), p_(p) {}

  PrimePoly parse() {
    PrimePoly v = expr();
    if (!cur_.done()) cur_.fail("unexpected trailing input");
    return v;
  }

 private:
  PrimePoly expr() {
    PrimePoly acc = PrimePoly::zero(p_);
    bool negate = false;
    if (cur_.accept('-'))
      negate = true;
    else
      cur_.accept('+');
    for (;;) {
      PrimePoly t = term();
      acc = negate ? acc - t : acc + t;
      if (cur_.accept('+'))
        negate = false;
      else if (cur_.accept('-'))
        negate = true;
      else
        return acc;
    }
  }
  PrimePoly term() {
    PrimePoly acc = factor();
    for (;;) {
      if (cur_.accept('*')) {
        acc = acc * factor();
        continue;
      }
      const char c = cur_.peek();
      if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * factor();
        continue;
      }
      return acc;
    }
  }
  PrimePoly factor() {
    PrimePoly base = atom();
    if (cur_.accept('^')) base = base.pow(static_cast<unsigned>(cur_.number()));
    return base;
  }
  PrimePoly atom() {
    if (cur_.accept('(')) {
      PrimePoly v = expr();
      cur_.expect(')');
      return v;
    }
    if (cur_.accept('x')) return PrimePoly::x(p_);
    return PrimePoly::constant(p_, static_cast<PrimePoly::Coeff>(cur_.number() % p_));
  }

  Cursor cur_;
  unsigned p_;
};

}  // namespace

PrimePoly parse_prime_poly(std::string_view text, unsigned p) { return PrimeParser(text, p).parse(); }

FactoredPoly parse_factored_poly(std::string_view text) {
  Cursor cur(text);
  std::map<std::string, unsigned> f;
  if (cur.peek() == '1') {
    cur.number();
    if (!cur.done()) cur.fail("unexpected trailing input");
    return FactoredPoly{};
  }
  bool first = true;
  while (!cur.done()) {
    if (!first && !cur.accept('*') && cur.peek() != '(' && cur.peek() != 'x')
      cur.fail("expected '*'");
    first = false;
    std::string label;
    if (cur.accept('(')) {
      cur.expect('x');
      if (cur.accept('-'))
        label = cur.label();
      else
        label = "0";
      cur.expect(')');
    } else if (cur.accept('x')) {
      label = "0";
    } else {
      cur.fail("expected a factor '(x-<label>)'");
    }
    unsigned e = 1;
    if (cur.accept('^')) e = static_cast<unsigned>(cur.number());
    f[label] += e;
  }
  if (first) cur.fail("empty polynomial");
  return FactoredPoly(std::move(f));
}

Poly parse_poly(std::string_view text, const BaseField& field) {
  if (field.is_symbolic()) return Poly(field, parse_factored_poly(text));
  PrimePoly p = parse_prime_poly(text, field.characteristic());
  if (p.is_zero()) throw Error("polynomial '" + std::string(text) + "' is zero");
  return Poly(std::move(p));
}

}  // namespace qfilt

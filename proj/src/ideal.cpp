#include "qfilt/ideal.hpp"

#include <algorithm>

#include "qfilt/error.hpp"

namespace qfilt {

AffineIdeal AffineIdeal::zero(BaseField field) { return AffineIdeal(std::move(field), Kind::Zero, std::nullopt); }

AffineIdeal AffineIdeal::unit(BaseField field) { return AffineIdeal(std::move(field), Kind::Unit, std::nullopt); }

AffineIdeal AffineIdeal::principal(const Poly& generator) {
  if (generator.degree() <= 0) return unit(generator.field());
  return AffineIdeal(generator.field(), Kind::Principal, generator.monic());
}

Poly AffineIdeal::generator() const {
  switch (kind_) {
    case Kind::Zero: throw Error("the zero ideal has no monic generator");
    case Kind::Unit: return one(field_);
    case Kind::Principal: break;
  }
  return *gen_;
}

std::string AffineIdeal::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Unit: return "1";
    case Kind::Principal: break;
  }
  return gen_->to_string();
}

namespace {

void require_same(const AffineIdeal& a, const AffineIdeal& b) {
  if (a.field() != b.field()) throw Error("ring mismatch");
}

}  // namespace

AffineIdeal sum(const AffineIdeal& a, const AffineIdeal& b) {
  require_same(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return AffineIdeal::principal(gcd(a.generator(), b.generator()));
}

AffineIdeal product(const AffineIdeal& a, const AffineIdeal& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return AffineIdeal::zero(a.field());
  return AffineIdeal::principal(a.generator() * b.generator());
}

AffineIdeal intersection(const AffineIdeal& a, const AffineIdeal& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return AffineIdeal::zero(a.field());
  return AffineIdeal::principal(lcm(a.generator(), b.generator()));
}

AffineIdeal colon(const AffineIdeal& a, const AffineIdeal& b) {
  require_same(a, b);
  if (b.is_zero()) return AffineIdeal::unit(a.field());
  if (a.is_zero()) return a;
  const Poly f = a.generator();
  return AffineIdeal::principal(exact_quotient(f, gcd(f, b.generator())));
}

bool contains(const AffineIdeal& a, const AffineIdeal& b) {
  require_same(a, b);
  if (b.is_zero() || a.is_unit()) return true;
  if (a.is_zero()) return false;
  return divides(a.generator(), b.generator());
}

IdealOps ideal_ops(const AffineIdeal& a, const AffineIdeal& b) {
  return {sum(a, b), product(a, b), intersection(a, b), colon(a, b), contains(a, b)};
}

// ---------------------------------------------------------------------------

QuotientRing::QuotientRing(Poly modulus) : modulus_(std::move(modulus)) {
  if (modulus_.degree() < 1) throw Error("quotient modulus must have degree >= 1");
  if (!modulus_.is_monic()) modulus_ = modulus_.monic();
}

std::string QuotientRing::to_string() const {
  return field().to_string() + "[x]/(" + modulus_.to_string() + ")";
}

Poly QuotientRing::reduce(const Poly& g) const { return gcd(g, modulus_); }

Poly QuotientRing::product(const Poly& d1, const Poly& d2) const { return gcd(d1 * d2, modulus_); }

std::size_t DivisorLattice::index_of(const Poly& divisor) const {
  auto it = std::find(divisors.begin(), divisors.end(), divisor);
  if (it == divisors.end()) throw Error("'" + divisor.to_string() + "' is not an ideal of the ring");
  return static_cast<std::size_t>(it - divisors.begin());
}

DivisorLattice divisor_lattice(const QuotientRing& ring, const Limits& limits) {
  if (ring.modulus().degree() > static_cast<int>(limits.lattice_degree_bound))
    throw Error("lattice too large");
  const Factorization fac = factor(ring.modulus(), limits);
  DivisorLattice lat;
  // Mixed-radix walk over exponent vectors 0..e_i.
  std::vector<unsigned> exps(fac.factors.size(), 0);
  for (;;) {
    Poly d = one(ring.field());
    for (std::size_t i = 0; i < exps.size(); ++i) d = d * fac.factors[i].factor.pow(exps[i]);
    lat.divisors.push_back(d.monic());
    std::size_t i = 0;
    while (i < exps.size() && exps[i] == fac.factors[i].multiplicity) exps[i++] = 0;
    if (i == exps.size()) break;
    ++exps[i];
  }
  // Smaller ideals (larger divisors) first.
  std::sort(lat.divisors.begin(), lat.divisors.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a < b;
  });
  const std::size_t n = lat.divisors.size();
  lat.contains.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lat.contains[i][j] = divides(lat.divisors[i], lat.divisors[j]);
  return lat;
}

}  // namespace qfilt

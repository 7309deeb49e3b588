#include "qfilt/scheme.hpp"

#include <algorithm>

#include "qfilt/error.hpp"

namespace qfilt {

struct Scheme::Data {
  Kind kind = Kind::AffineLine;
  std::optional<BaseField> field;
  std::optional<QuotientRing> ring;
  std::vector<SpecPoint> primes;   // quotient points, sorted
  std::vector<unsigned> lengths;   // multiplicity of each prime in the modulus
  int chart = 0;
  std::vector<BaseField> components;
  bool integer_family = false;

  bool operator==(const Data& o) const {
    return kind == o.kind && field == o.field && ring == o.ring && chart == o.chart &&
           components == o.components && integer_family == o.integer_family;
  }
};

namespace {

SpecPoint point_of_factor(const Poly& irreducible) {
  if (irreducible.is_prime_field()) return SpecPoint::closed(irreducible.prime());
  return SpecPoint::label(irreducible.factored().factors().begin()->first);
}

}  // namespace

Scheme Scheme::affine_line(BaseField field) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::AffineLine;
  d->field = std::move(field);
  return Scheme(std::move(d));
}

Scheme Scheme::affine_quotient(QuotientRing ring, const Limits& limits) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::AffineQuotient;
  d->field = ring.field();
  const Factorization fac = factor(ring.modulus(), limits);
  std::vector<std::pair<SpecPoint, unsigned>> pts;
  for (const auto& [f, m] : fac.factors) pts.emplace_back(point_of_factor(f), m);
  std::sort(pts.begin(), pts.end());
  for (auto& [p, m] : pts) {
    d->primes.push_back(p);
    d->lengths.push_back(m);
  }
  d->ring = std::move(ring);
  return Scheme(std::move(d));
}

Scheme Scheme::proj_line(BaseField field) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::ProjLine;
  d->field = std::move(field);
  return Scheme(std::move(d));
}

Scheme Scheme::proj_chart(BaseField field, int index) {
  if (index != 0 && index != 1) throw Error("P^1 has charts 0 and 1 only");
  auto d = std::make_shared<Data>();
  d->kind = Kind::ProjChart;
  d->field = std::move(field);
  d->chart = index;
  return Scheme(std::move(d));
}

Scheme Scheme::disjoint_union(std::vector<BaseField> components, const Limits& limits) {
  if (components.empty()) throw Error("a disjoint union needs at least one component");
  if (components.size() > limits.max_components)
    throw Error("explicit disjoint unions are capped at " + std::to_string(limits.max_components) +
                " components");
  auto d = std::make_shared<Data>();
  d->kind = Kind::DisjointUnion;
  d->components = std::move(components);
  return Scheme(std::move(d));
}

Scheme Scheme::integer_disjoint_union() {
  auto d = std::make_shared<Data>();
  d->kind = Kind::DisjointUnion;
  d->integer_family = true;
  return Scheme(std::move(d));
}

Scheme::Kind Scheme::kind() const noexcept { return d_->kind; }

const BaseField& Scheme::field() const {
  if (!d_->field) throw Error(to_string() + " has no single base field");
  return *d_->field;
}

const QuotientRing& Scheme::quotient() const {
  if (!d_->ring) throw Error(to_string() + " is not a quotient ring spectrum");
  return *d_->ring;
}

int Scheme::chart_index() const { return d_->chart; }

bool Scheme::is_line_like() const noexcept {
  return d_->kind == Kind::AffineLine || d_->kind == Kind::ProjLine || d_->kind == Kind::ProjChart;
}

bool Scheme::is_integer_family() const noexcept { return d_->integer_family; }

const std::vector<BaseField>& Scheme::component_fields() const { return d_->components; }

std::optional<std::size_t> Scheme::component_count() const {
  switch (d_->kind) {
    case Kind::AffineQuotient: return d_->primes.size();
    case Kind::DisjointUnion:
      if (d_->integer_family) return std::nullopt;
      return d_->components.size();
    default: return 1;
  }
}

ComponentSet Scheme::all_components() const {
  const auto n = component_count();
  if (!n) return ComponentSet::all();
  std::set<std::int64_t> ids;
  for (std::size_t i = 0; i < *n; ++i) ids.insert(static_cast<std::int64_t>(i));
  return ComponentSet::finite(std::move(ids));
}

ComponentSet Scheme::normalize(const ComponentSet& s) const {
  if (!component_count()) return s;
  return s & all_components();
}

bool Scheme::contains(const SpecPoint& x) const {
  using K = SpecPoint::Kind;
  const Data& d = *d_;
  switch (d.kind) {
    case Kind::AffineQuotient:
      return std::find(d.primes.begin(), d.primes.end(), x) != d.primes.end();
    case Kind::DisjointUnion:
      if (x.kind() != K::Component) return false;
      return d.integer_family ||
             (x.component_index() >= 0 && static_cast<std::size_t>(x.component_index()) < d.components.size());
    default: break;
  }
  switch (x.kind()) {
    case K::Generic: return true;
    case K::Component: return false;
    case K::Infinity: return d.kind == Kind::ProjLine || (d.kind == Kind::ProjChart && d.chart == 1);
    case K::Closed: break;
  }
  if (d.field->is_symbolic() != x.has_label()) return false;
  if (x.has_poly() && x.poly().modulus() != d.field->characteristic()) return false;
  if (d.kind == Kind::ProjChart && d.chart == 1 && x == origin()) return false;
  return true;
}

void Scheme::require(const SpecPoint& x) const {
  if (!contains(x)) throw Error("point outside scheme: " + x.to_string() + " is not a point of " + to_string());
}

std::int64_t Scheme::component_of(const SpecPoint& x) const {
  require(x);
  if (d_->kind == Kind::AffineQuotient)
    return std::find(d_->primes.begin(), d_->primes.end(), x) - d_->primes.begin();
  if (d_->kind == Kind::DisjointUnion) return x.component_index();
  return 0;
}

StalkRing Scheme::stalk(const SpecPoint& x) const {
  require(x);
  switch (d_->kind) {
    case Kind::AffineQuotient:
      return StalkRing::artinian(d_->lengths[static_cast<std::size_t>(component_of(x))]);
    case Kind::DisjointUnion: return StalkRing::field();
    default: return x.is_generic() ? StalkRing::field() : StalkRing::dvr();
  }
}

std::vector<SpecPoint> Scheme::finite_points() const {
  if (d_->kind == Kind::AffineQuotient) return d_->primes;
  std::vector<SpecPoint> out;
  if (d_->kind == Kind::DisjointUnion && !d_->integer_family)
    for (std::size_t i = 0; i < d_->components.size(); ++i)
      out.push_back(SpecPoint::component(static_cast<std::int64_t>(i)));
  return out;
}

SpecPoint Scheme::component_point(std::int64_t i) const {
  if (d_->kind == Kind::AffineQuotient) {
    if (i < 0 || static_cast<std::size_t>(i) >= d_->primes.size()) throw Error("no component " + std::to_string(i));
    return d_->primes[static_cast<std::size_t>(i)];
  }
  if (d_->kind == Kind::DisjointUnion) {
    SpecPoint x = SpecPoint::component(i);
    require(x);
    return x;
  }
  return SpecPoint::generic();
}

SpecPoint Scheme::origin() const {
  if (field().is_symbolic()) return SpecPoint::label("0");
  return SpecPoint::closed(PrimePoly::x(field().characteristic()));
}

SpecPoint Scheme::parse_point(std::string_view text) const {
  const BaseField f = d_->field ? *d_->field : BaseField::symbolic();
  SpecPoint x = qfilt::parse_point(text, f);
  require(x);
  return x;
}

std::optional<std::size_t> Scheme::chart_count() const {
  switch (d_->kind) {
    case Kind::ProjLine: return 2;
    case Kind::DisjointUnion: return component_count();
    default: return 1;
  }
}

Scheme Scheme::chart(std::int64_t i) const {
  const auto n = chart_count();
  if (i < 0 ? !d_->integer_family : (n && static_cast<std::size_t>(i) >= *n))
    throw Error("unknown chart " + std::to_string(i) + " of " + to_string());
  switch (d_->kind) {
    case Kind::ProjLine: return proj_chart(*d_->field, static_cast<int>(i));
    case Kind::DisjointUnion:
      if (d_->integer_family) return disjoint_union({BaseField::symbolic("k_" + std::to_string(i))});
      return disjoint_union({d_->components[static_cast<std::size_t>(i)]});
    default: return *this;
  }
}

bool Scheme::chart_contains(std::int64_t i, const SpecPoint& x) const {
  if (!contains(x)) return false;
  switch (d_->kind) {
    case Kind::ProjLine:
      if (i == 0) return x.kind() != SpecPoint::Kind::Infinity;
      return !(x == origin());
    case Kind::DisjointUnion: return x.component_index() == i;
    default: return i == 0;
  }
}

std::string Scheme::to_string() const {
  const Data& d = *d_;
  switch (d.kind) {
    case Kind::AffineLine: return "A1(" + d.field->to_string() + ")";
    case Kind::AffineQuotient: return d.ring->to_string();
    case Kind::ProjLine: return "P1(" + d.field->to_string() + ")";
    case Kind::ProjChart: return "P1(" + d.field->to_string() + ") chart " + std::to_string(d.chart);
    case Kind::DisjointUnion: {
      if (d.integer_family) return "DU(Z)";
      std::string out = "DU[";
      for (std::size_t i = 0; i < d.components.size(); ++i) out += (i ? "," : "") + d.components[i].to_string();
      return out + "]";
    }
  }
  return {};
}

bool operator==(const Scheme& a, const Scheme& b) { return a.d_ == b.d_ || *a.d_ == *b.d_; }

void require_same_scheme(const Scheme& a, const Scheme& b) {
  if (!(a == b)) throw Error("scheme mismatch: " + a.to_string() + " vs " + b.to_string());
}

// ---------------------------------------------------------------------------
// IdealSheaf

IdealSheaf::IdealSheaf(Scheme scheme, ComponentSet zero, std::map<SpecPoint, Level> orders)
    : scheme_(std::move(scheme)), zero_(std::move(zero)), orders_(std::move(orders)) {}

IdealSheaf IdealSheaf::unit(Scheme scheme) { return IdealSheaf(std::move(scheme), {}, {}); }

IdealSheaf IdealSheaf::zero(Scheme scheme) {
  ComponentSet all = scheme.all_components();
  return IdealSheaf(std::move(scheme), std::move(all), {});
}

IdealSheaf IdealSheaf::from_orders(Scheme scheme, const std::map<SpecPoint, Level>& orders,
                                   ComponentSet zero_components) {
  ComponentSet zero = scheme.normalize(zero_components);
  std::map<SpecPoint, Level> kept;
  for (const auto& [x, ord] : orders) {
    scheme.require(x);
    if (ord.is_infinite()) throw Error("an ideal cannot have infinite order at " + x.to_string());
    const StalkRing st = scheme.stalk(x);
    const Level o = st.kind == StalkRing::Kind::DVR ? ord : ord.clamped(st.length);
    if (o == Level::finite(0)) continue;
    if (x.is_generic() && o.is_finite())
      throw Error("an ideal has order 0 or vanishes at the generic point");
    if (o.is_top())
      zero.insert(scheme.component_of(x));
    else
      kept.emplace(x, o);
  }
  std::erase_if(kept, [&](const auto& kv) { return zero.contains(scheme.component_of(kv.first)); });
  zero = scheme.normalize(zero);
  return IdealSheaf(std::move(scheme), std::move(zero), std::move(kept));
}

IdealSheaf IdealSheaf::from_affine(Scheme scheme, const AffineIdeal& ideal) {
  const auto kind = scheme.kind();
  const bool coordinate = kind == Scheme::Kind::AffineLine || kind == Scheme::Kind::AffineQuotient ||
                          kind == Scheme::Kind::ProjLine ||
                          (kind == Scheme::Kind::ProjChart && scheme.chart_index() == 0);
  if (!coordinate) throw Error("no coordinate ideals on " + scheme.to_string() + "; give orders per point");
  if (ideal.field() != scheme.field()) throw Error("ring mismatch");
  if (ideal.is_zero()) return zero(std::move(scheme));
  Poly g = ideal.generator();
  if (kind == Scheme::Kind::AffineQuotient) g = scheme.quotient().reduce(g);
  std::map<SpecPoint, Level> orders;
  for (const auto& [f, m] : factor(g).factors) {
    const SpecPoint x = f.is_prime_field() ? SpecPoint::closed(f.prime())
                                           : SpecPoint::label(f.factored().factors().begin()->first);
    orders.emplace(x, Level::finite(m));
  }
  return from_orders(std::move(scheme), orders);
}

Level IdealSheaf::order_at(const SpecPoint& x) const {
  if (zero_.contains(scheme_.component_of(x))) return Level::top();
  auto it = orders_.find(x);
  return it == orders_.end() ? Level::finite(0) : it->second;
}

bool IdealSheaf::is_zero() const { return zero_ == scheme_.all_components(); }

AffineIdeal IdealSheaf::to_affine() const {
  const auto kind = scheme_.kind();
  if (kind == Scheme::Kind::AffineQuotient) {
    const auto points = scheme_.finite_points();
    Poly d = one(scheme_.field());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Level o = order_at(points[i]);
      const unsigned e = o.is_top() ? scheme_.stalk(points[i]).length : static_cast<unsigned>(o.value());
      d = d * points[i].generator(scheme_.field()).pow(e);
    }
    return AffineIdeal::principal(d);
  }
  if (!(kind == Scheme::Kind::AffineLine || (kind == Scheme::Kind::ProjChart && scheme_.chart_index() == 0)))
    throw Error("no coordinate ideal on " + scheme_.to_string());
  if (is_zero()) return AffineIdeal::zero(scheme_.field());
  Poly g = one(scheme_.field());
  for (const auto& [x, o] : orders_) g = g * x.generator(scheme_.field()).pow(static_cast<unsigned>(o.value()));
  return AffineIdeal::principal(g);
}

std::string IdealSheaf::to_string() const {
  if (is_zero()) return "0";
  if (is_unit()) return "1";
  const auto kind = scheme_.kind();
  if (kind == Scheme::Kind::AffineLine || kind == Scheme::Kind::AffineQuotient ||
      (kind == Scheme::Kind::ProjChart && scheme_.chart_index() == 0))
    return to_affine().to_string();
  std::string out;
  for (const auto& [x, o] : orders_) {
    if (!out.empty()) out += '*';
    out += x.to_string();
    if (o != Level::finite(1)) out += "^" + o.to_string();
  }
  if (!zero_.is_empty()) {
    if (!out.empty()) out += '*';
    out += zero_.is_cofinite() ? "zero(all but " : "zero(";
    bool first = true;
    for (auto c : zero_.listed()) {
      out += (first ? "" : ",") + SpecPoint::component(c).to_string();
      first = false;
    }
    out += ")";
  }
  return out;
}

namespace {

template <class Op>
IdealSheaf combine(const IdealSheaf& a, const IdealSheaf& b, ComponentSet zero, Op op) {
  require_same_scheme(a.scheme(), b.scheme());
  std::map<SpecPoint, Level> orders;
  for (const auto* src : {&a, &b})
    for (const auto& [x, _] : src->orders()) orders[x] = op(a.order_at(x), b.order_at(x));
  return IdealSheaf::from_orders(a.scheme(), orders, std::move(zero));
}

}  // namespace

IdealSheaf product(const IdealSheaf& a, const IdealSheaf& b) {
  return combine(a, b, a.zero_components() | b.zero_components(), [](Level x, Level y) { return x + y; });
}

IdealSheaf sum(const IdealSheaf& a, const IdealSheaf& b) {
  return combine(a, b, a.zero_components() & b.zero_components(),
                 [](Level x, Level y) { return std::min(x, y); });
}

IdealSheaf intersection(const IdealSheaf& a, const IdealSheaf& b) {
  return combine(a, b, a.zero_components() | b.zero_components(),
                 [](Level x, Level y) { return std::max(x, y); });
}

bool contains(const IdealSheaf& a, const IdealSheaf& b) {
  require_same_scheme(a.scheme(), b.scheme());
  if (!subset(a.zero_components(), b.zero_components())) return false;
  for (const auto& [x, o] : a.orders())
    if (o > b.order_at(x)) return false;
  return true;
}

bool is_idempotent(const IdealSheaf& a) { return product(a, a) == a; }

IdealSheaf restrict(const IdealSheaf& a, std::int64_t chart) {
  const Scheme& s = a.scheme();
  const Scheme target = s.chart(chart);
  if (s.kind() == Scheme::Kind::DisjointUnion) {
    if (a.zero_components().contains(chart)) return IdealSheaf::zero(target);
    return IdealSheaf::unit(target);
  }
  std::map<SpecPoint, Level> orders;
  for (const auto& [x, o] : a.orders())
    if (s.chart_contains(chart, x)) orders.emplace(x, o);
  return IdealSheaf::from_orders(target, orders, a.zero_components());
}

}  // namespace qfilt

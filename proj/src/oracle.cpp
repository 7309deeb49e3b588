#include "qfilt/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "qfilt/classify.hpp"
#include "qfilt/error.hpp"

namespace qfilt::oracle {

namespace {

std::vector<unsigned> digits(unsigned a, unsigned p, unsigned len) {
  std::vector<unsigned> out(len);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = a % p;
    a /= p;
  }
  return out;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
  return a;
}

std::size_t count(const ElementSet& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

/// x * a in F_p[x]/(f), computed on digits.
unsigned times_x(unsigned a, unsigned p, const std::vector<unsigned>& f_low) {
  const unsigned d = static_cast<unsigned>(f_low.size());
  auto c = digits(a, p, d);
  const unsigned top = c[d - 1];
  for (unsigned i = d - 1; i > 0; --i) c[i] = c[i - 1];
  c[0] = 0;
  for (unsigned i = 0; i < d; ++i) c[i] = (c[i] + (p - (top * f_low[i]) % p)) % p;
  return undigits(c, p);
}

}  // namespace

FiniteRingTable FiniteRingTable::build(const QuotientRing& ring, const Limits& limits) {
  if (!ring.field().is_prime_field()) throw Error("the oracle needs a prime field, not " + ring.field().to_string());
  FiniteRingTable t(ring);
  const PrimePoly& f = ring.modulus().prime();
  t.p_ = f.modulus();
  t.d_ = f.degree();
  std::size_t n = 1;
  for (int i = 0; i < t.d_; ++i) {
    n *= t.p_;
    if (n > limits.max_ring_size)
      throw Error("ring too large for the oracle: " + ring.to_string() + " has more than " +
                  std::to_string(limits.max_ring_size) + " elements");
  }
  t.n_ = static_cast<unsigned>(n);
  const unsigned p = t.p_, d = static_cast<unsigned>(t.d_);
  std::vector<unsigned> f_low(d);
  for (unsigned i = 0; i < d; ++i) f_low[i] = f.coeff(i);

  t.add_.resize(n * n);
  t.mul_.resize(n * n);
  for (unsigned a = 0; a < n; ++a) {
    const auto da = digits(a, p, d);
    for (unsigned b = 0; b < n; ++b) {
      auto db = digits(b, p, d);
      for (unsigned i = 0; i < d; ++i) db[i] = (db[i] + da[i]) % p;
      t.add_[a * n + b] = static_cast<std::uint16_t>(undigits(db, p));
    }
  }
  for (unsigned a = 0; a < n; ++a) {
    unsigned cur = a;
    std::vector<unsigned> xa(d);
    for (unsigned i = 0; i < d; ++i) {
      xa[i] = cur;
      cur = times_x(cur, p, f_low);
    }
    for (unsigned b = 0; b < n; ++b) {
      const auto db = digits(b, p, d);
      unsigned acc = 0;
      for (unsigned i = 0; i < d; ++i)
        for (unsigned k = 0; k < db[i]; ++k) acc = t.add_[acc * n + xa[i]];
      t.mul_[a * n + b] = static_cast<std::uint16_t>(acc);
    }
  }

  // Self-check of the ring axioms, exhaustive when cheap.
  auto check = [&](unsigned a, unsigned b, unsigned c) {
    if (t.mul(a, b) != t.mul(b, a) || t.add(a, b) != t.add(b, a) || t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) ||
        t.add(t.add(a, b), c) != t.add(a, t.add(b, c)) || t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)))
      throw Error("internal: ring table axiom failed for " + ring.to_string());
  };
  if (n * n * n <= 2'000'000) {
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b)
        for (unsigned c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(1);
    std::uniform_int_distribution<unsigned> pick(0, t.n_ - 1);
    for (int i = 0; i < 200'000; ++i) check(pick(rng), pick(rng), pick(rng));
  }

  std::set<ElementSet> found;
  for (unsigned a = 0; a < n; ++a) {
    ElementSet s(n);
    for (unsigned r = 0; r < n; ++r) s[t.mul(a, r)] = true;
    found.insert(s);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<ElementSet> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        ElementSet u(n);
        for (unsigned e = 0; e < n; ++e) u[e] = cur[i][e] || cur[j][e];
        if (found.insert(t.additive_closure(u)).second) grew = true;
      }
    if (found.size() > limits.max_oracle_ideals) throw Error("lattice too large: more than " +
                                                             std::to_string(limits.max_oracle_ideals) + " ideals");
  }
  t.ideals_.assign(found.begin(), found.end());
  std::stable_sort(t.ideals_.begin(), t.ideals_.end(),
                   [](const ElementSet& a, const ElementSet& b) { return count(a) < count(b); });
  const std::size_t m = t.ideals_.size();
  t.contains_.assign(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t.contains_[i][j] = intersect(t.ideals_[i], t.ideals_[j]) == t.ideals_[j];

  for (std::size_t i = 0; i + 1 < m; ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j + 1 < m; ++j)
      if (j != i && t.contains_[j][i]) maximal = false;
    if (!maximal) continue;
    const PrimePoly g = t.ideal_generator(i);
    std::size_t prev = t.principal_ideal(t.element_of(g));
    unsigned k = 1;
    for (;; ++k) {
      const std::size_t next = t.principal_ideal(t.element_of(g.pow(k + 1)));
      if (next == prev) break;
      prev = next;
    }
    t.primes_.push_back({g, k});
  }
  std::sort(t.primes_.begin(), t.primes_.end(), [](const Prime& a, const Prime& b) { return a.generator < b.generator; });
  return t;
}

ElementSet FiniteRingTable::additive_closure(ElementSet s) const {
  s[0] = true;
  std::vector<unsigned> elems;
  for (unsigned e = 0; e < n_; ++e)
    if (s[e]) elems.push_back(e);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const unsigned w = add(elems[i], elems[j]);
      if (!s[w]) {
        s[w] = true;
        elems.push_back(w);
      }
    }
  return s;
}

unsigned FiniteRingTable::x() const { return element_of(PrimePoly::x(p_)); }

unsigned FiniteRingTable::element_of(const PrimePoly& f) const {
  if (f.modulus() != p_) throw Error("ring mismatch");
  std::vector<unsigned> f_low(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) f_low[static_cast<std::size_t>(i)] = ring_.modulus().prime().coeff(static_cast<std::size_t>(i));
  unsigned v = 0;
  for (int i = f.degree(); i >= 0; --i) {
    v = times_x(v, p_, f_low);
    std::vector<unsigned> c(static_cast<std::size_t>(d_));
    c[0] = f.coeff(static_cast<std::size_t>(i)) % p_;
    v = add(v, undigits(c, p_));
  }
  return v;
}

PrimePoly FiniteRingTable::poly_of(unsigned a) const {
  const auto d = digits(a, p_, static_cast<unsigned>(d_));
  return PrimePoly(p_, std::vector<PrimePoly::Coeff>(d.begin(), d.end()));
}

std::size_t FiniteRingTable::index_of(const ElementSet& s) const {
  auto it = std::find(ideals_.begin(), ideals_.end(), s);
  if (it == ideals_.end()) throw Error("internal: element set is not an ideal");
  return static_cast<std::size_t>(it - ideals_.begin());
}

std::size_t FiniteRingTable::principal_ideal(unsigned a) const {
  ElementSet s(n_);
  for (unsigned r = 0; r < n_; ++r) s[mul(a, r)] = true;
  return index_of(s);
}

std::size_t FiniteRingTable::ideal_sum(std::size_t i, std::size_t j) const {
  ElementSet u(n_);
  for (unsigned e = 0; e < n_; ++e) u[e] = ideals_[i][e] || ideals_[j][e];
  return index_of(additive_closure(u));
}

std::size_t FiniteRingTable::ideal_product(std::size_t i, std::size_t j) const {
  ElementSet u(n_);
  for (unsigned a = 0; a < n_; ++a)
    if (ideals_[i][a])
      for (unsigned b = 0; b < n_; ++b)
        if (ideals_[j][b]) u[mul(a, b)] = true;
  return index_of(additive_closure(u));
}

std::size_t FiniteRingTable::ideal_intersection(std::size_t i, std::size_t j) const {
  return index_of(intersect(ideals_[i], ideals_[j]));
}

std::size_t FiniteRingTable::colon(unsigned a, std::size_t l) const {
  ElementSet s(n_);
  for (unsigned b = 0; b < n_; ++b) s[b] = ideals_[l][mul(a, b)];
  return index_of(s);
}

PrimePoly FiniteRingTable::ideal_generator(std::size_t i) const {
  if (i == zero_ideal()) return ring_.modulus().prime();
  std::optional<PrimePoly> best;
  for (unsigned e = 1; e < n_; ++e)
    if (ideals_[i][e]) {
      PrimePoly g = poly_of(e);
      if (!best || g.degree() < best->degree()) best = g;
    }
  return best->monic();
}

std::string FiniteRingTable::ideal_name(std::size_t i) const {
  if (i == zero_ideal()) return "0";
  return "(" + ideal_generator(i).to_string() + ")";
}

// ---------------------------------------------------------------------------

bool is_filter(const FiniteRingTable& r, ExplicitFilter f) {
  const std::size_t m = r.ideal_count();
  if (!f.contains(r.unit_ideal())) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (!f.contains(i)) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (r.ideal_contains(j, i) && !f.contains(j)) return false;
      if (f.contains(j) && !f.contains(r.ideal_intersection(i, j))) return false;
    }
  }
  return true;
}

std::vector<ExplicitFilter> enumerate_filters(const FiniteRingTable& r, const Limits& limits) {
  const std::size_t m = r.ideal_count();
  if (m > limits.max_oracle_ideals || m > 31) throw Error("lattice too large");
  std::vector<std::uint32_t> up(m);
  std::vector<std::vector<std::size_t>> meet(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (r.ideal_contains(j, i)) up[i] |= 1U << j;
      meet[i][j] = r.ideal_intersection(i, j);
    }
  std::vector<ExplicitFilter> out;
  const std::uint32_t unit = 1U << r.unit_ideal();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const auto s = static_cast<std::uint32_t>(mask);
    if (!(s & unit)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!((s >> i) & 1U)) continue;
      if ((up[i] & s) != up[i]) ok = false;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (((s >> j) & 1U) && !((s >> meet[i][j]) & 1U)) ok = false;
    }
    if (ok) out.push_back({s});
  }
  return out;
}

bool check_prelocalizing(const FiniteRingTable& r, ExplicitFilter f) {
  for (std::size_t l = 0; l < r.ideal_count(); ++l) {
    if (!f.contains(l)) continue;
    for (unsigned a = 0; a < r.size(); ++a)
      if (!f.contains(r.colon(a, l))) return false;
  }
  return true;
}

ProductTwoWays product_two_ways(const FiniteRingTable& r, ExplicitFilter f1, ExplicitFilter f2) {
  const std::size_t m = r.ideal_count();
  ProductTwoWays out;
  for (std::size_t l = 0; l < m; ++l) {
    bool inv = false;
    for (std::size_t l1 = 0; l1 < m && !inv; ++l1) {
      if (!f1.contains(l1)) continue;
      bool all = true;
      for (unsigned a = 0; a < r.size() && all; ++a)
        if (r.ideal(l1)[a] && !f2.contains(r.colon(a, l))) all = false;
      inv = all;
    }
    if (inv) out.via_inverse.members |= 1U << l;
    bool prod = false;
    for (std::size_t i1 = 0; i1 < m && !prod; ++i1)
      for (std::size_t i2 = 0; i2 < m && !prod; ++i2)
        if (f1.contains(i1) && f2.contains(i2) && r.ideal_contains(l, r.ideal_product(i1, i2))) prod = true;
    if (prod) out.via_ideals.members |= 1U << l;
  }
  out.equal = out.via_inverse == out.via_ideals;
  return out;
}

bool is_gabriel(const FiniteRingTable& r, ExplicitFilter f) {
  const ExplicitFilter ff = product_two_ways(r, f, f).via_inverse;
  return (ff.members & ~f.members) == 0;
}

bool is_closed_under_products(const FiniteRingTable& r, ExplicitFilter f) {
  for (std::size_t i = 0; i < r.ideal_count(); ++i)
    for (std::size_t j = 0; j < r.ideal_count(); ++j)
      if (f.contains(i) && f.contains(j) && !f.contains(r.ideal_product(i, j))) return false;
  return true;
}

ExplicitFilter filter_closure(const FiniteRingTable& r, std::uint32_t ideals) {
  ExplicitFilter f{ideals | (1U << r.unit_ideal())};
  const std::size_t m = r.ideal_count();
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (!f.contains(i)) continue;
      for (std::size_t j = 0; j < m; ++j) {
        std::uint32_t add = 0;
        if (r.ideal_contains(j, i)) add |= 1U << j;
        if (f.contains(j)) add |= 1U << r.ideal_intersection(i, j);
        if ((f.members | add) != f.members) {
          f.members |= add;
          grew = true;
        }
      }
    }
  }
  return f;
}

std::optional<std::size_t> least_member(const FiniteRingTable& r, ExplicitFilter f) {
  std::size_t cur = r.unit_ideal();
  for (std::size_t i = 0; i < r.ideal_count(); ++i)
    if (f.contains(i)) cur = r.ideal_intersection(cur, i);
  if (!f.contains(cur)) return std::nullopt;
  return cur;
}

std::string describe(const FiniteRingTable& r, ExplicitFilter f) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = r.ideal_count(); i-- > 0;)
    if (f.contains(i)) {
      out += (first ? "" : ",") + r.ideal_name(i);
      first = false;
    }
  return out + "}";
}

// ---------------------------------------------------------------------------

FiniteModule FiniteModule::from_type(const FiniteRingTable& r,
                                     const std::vector<std::pair<std::size_t, unsigned>>& summands) {
  FiniteModule m(r);
  const unsigned p = r.characteristic();
  std::vector<std::pair<unsigned, std::vector<unsigned>>> blocks;  // offset, low coefficients of the block modulus
  for (const auto& [i, k] : summands) {
    if (i >= r.primes().size() || k == 0 || k > r.primes()[i].length) throw Error("no such indecomposable module");
    const PrimePoly g = r.primes()[i].generator.pow(k);
    std::vector<unsigned> low(static_cast<std::size_t>(g.degree()));
    for (std::size_t c = 0; c < low.size(); ++c) low[c] = g.coeff(c);
    blocks.emplace_back(m.dim_, std::move(low));
    m.dim_ += static_cast<unsigned>(g.degree());
  }
  std::size_t n = 1;
  for (unsigned i = 0; i < m.dim_; ++i) {
    n *= p;
    if (n > (1U << 16)) throw Error("module too large for the oracle");
  }
  m.n_ = static_cast<unsigned>(n);
  m.x_action_.resize(n);
  for (unsigned u = 0; u < n; ++u) {
    const auto du = digits(u, p, m.dim_);
    std::vector<unsigned> out(m.dim_);
    for (const auto& [off, low] : blocks) {
      std::vector<unsigned> part(du.begin() + off, du.begin() + off + static_cast<long>(low.size()));
      const unsigned v = times_x(undigits(part, p), p, low);
      const auto dv = digits(v, p, static_cast<unsigned>(low.size()));
      std::copy(dv.begin(), dv.end(), out.begin() + off);
    }
    m.x_action_[u] = undigits(out, p);
  }
  m.finish();
  return m;
}

FiniteModule FiniteModule::regular(const FiniteRingTable& r) {
  FiniteModule m(r);
  m.dim_ = static_cast<unsigned>(r.degree());
  m.n_ = r.size();
  m.x_action_.resize(m.n_);
  const unsigned x = r.x();
  for (unsigned u = 0; u < m.n_; ++u) m.x_action_[u] = r.mul(x, u);
  m.finish();
  return m;
}

void FiniteModule::finish() {
  for (const auto& pr : r_->primes()) {
    std::vector<std::vector<std::uint32_t>> maps;
    for (unsigned j = 1; j <= pr.length; ++j) {
      const PrimePoly q = pr.generator.pow(j);
      std::vector<std::uint32_t> mp(n_);
      for (unsigned u = 0; u < n_; ++u) mp[u] = apply_poly(q, u);
      maps.push_back(std::move(mp));
    }
    pow_maps_.insert(pow_maps_.end(), std::make_move_iterator(maps.begin()), std::make_move_iterator(maps.end()));
  }
}

unsigned FiniteModule::add(unsigned u, unsigned v) const {
  const unsigned p = r_->characteristic();
  auto a = digits(u, p, dim_);
  const auto b = digits(v, p, dim_);
  for (unsigned i = 0; i < dim_; ++i) a[i] = (a[i] + b[i]) % p;
  return undigits(a, p);
}

unsigned FiniteModule::scale(unsigned c, unsigned u) const {
  const unsigned p = r_->characteristic();
  auto a = digits(u, p, dim_);
  for (auto& d : a) d = (d * c) % p;
  return undigits(a, p);
}

unsigned FiniteModule::apply_poly(const PrimePoly& q, unsigned u) const {
  unsigned v = 0;
  for (int i = q.degree(); i >= 0; --i) v = add(x_action_[v], scale(q.coeff(static_cast<std::size_t>(i)), u));
  return v;
}

unsigned FiniteModule::act(unsigned a, unsigned u) const { return apply_poly(r_->poly_of(a), u); }

ElementSet FiniteModule::closure(ElementSet s) const {
  s[0] = true;
  std::vector<unsigned> elems;
  for (unsigned e = 0; e < n_; ++e)
    if (s[e]) elems.push_back(e);
  auto push = [&](unsigned w) {
    if (!s[w]) {
      s[w] = true;
      elems.push_back(w);
    }
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    push(x_action_[elems[i]]);
    for (std::size_t j = 0; j <= i; ++j) push(add(elems[i], elems[j]));
  }
  return s;
}

std::vector<ElementSet> FiniteModule::submodules() const {
  std::set<ElementSet> seen;
  std::vector<ElementSet> queue{closure(ElementSet(n_))};
  seen.insert(queue.front());
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const ElementSet cur = queue[q];
    for (unsigned v = 0; v < n_; ++v) {
      if (cur[v]) continue;
      ElementSet next = cur;
      next[v] = true;
      next = closure(std::move(next));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return queue;
}

unsigned FiniteModule::count_log(std::size_t c) const {
  unsigned k = 0;
  while (c > 1) {
    c /= r_->characteristic();
    ++k;
  }
  return k;
}

namespace {

ModuleType type_from_dims(const FiniteRingTable& r, const std::vector<std::vector<unsigned>>& dims) {
  ModuleType t;
  for (std::size_t i = 0; i < r.primes().size(); ++i) {
    const unsigned e = r.primes()[i].length;
    const unsigned deg = static_cast<unsigned>(r.primes()[i].generator.degree());
    std::vector<unsigned> at_least(e + 2, 0);
    for (unsigned j = 1; j <= e; ++j) at_least[j] = (dims[i][j] - dims[i][j - 1]) / deg;
    std::vector<unsigned> mult(e);
    for (unsigned k = 1; k <= e; ++k) mult[k - 1] = at_least[k] - at_least[k + 1];
    t.push_back(std::move(mult));
  }
  return t;
}

}  // namespace

ModuleType FiniteModule::type_of(const ElementSet& sub) const {
  std::vector<std::vector<unsigned>> dims;
  std::size_t map = 0;
  for (const auto& pr : r_->primes()) {
    std::vector<unsigned> d{0};
    for (unsigned j = 1; j <= pr.length; ++j, ++map) {
      std::size_t c = 0;
      for (unsigned v = 0; v < n_; ++v)
        if (sub[v] && pow_maps_[map][v] == 0) ++c;
      d.push_back(count_log(c));
    }
    dims.push_back(std::move(d));
  }
  return type_from_dims(*r_, dims);
}

ModuleType FiniteModule::quotient_type(const ElementSet& sub) const {
  const std::size_t size = count(sub);
  std::vector<std::vector<unsigned>> dims;
  std::size_t map = 0;
  for (const auto& pr : r_->primes()) {
    std::vector<unsigned> d{0};
    for (unsigned j = 1; j <= pr.length; ++j, ++map) {
      std::size_t c = 0;
      for (unsigned v = 0; v < n_; ++v)
        if (sub[pow_maps_[map][v]]) ++c;
      d.push_back(count_log(c / size));
    }
    dims.push_back(std::move(d));
  }
  return type_from_dims(*r_, dims);
}

ModuleType FiniteModule::type() const { return type_of(ElementSet(n_, true)); }

std::size_t FiniteModule::element_annihilator(unsigned u) const {
  ElementSet s(r_->size());
  for (unsigned a = 0; a < r_->size(); ++a) s[a] = act(a, u) == 0;
  return r_->index_of(s);
}

std::size_t FiniteModule::annihilator() const {
  std::size_t cur = r_->unit_ideal();
  for (unsigned u = 0; u < n_; ++u) cur = r_->ideal_intersection(cur, element_annihilator(u));
  return cur;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::pair<std::size_t, unsigned>>> modules_up_to(const FiniteRingTable& r, unsigned bound) {
  std::vector<std::pair<std::size_t, unsigned>> indec;
  for (std::size_t i = 0; i < r.primes().size(); ++i)
    for (unsigned k = 1; k <= r.primes()[i].length; ++k) indec.emplace_back(i, k);
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> out;
  std::vector<std::pair<std::size_t, unsigned>> cur;
  auto rec = [&](auto&& self, std::size_t from, unsigned left) -> void {
    out.push_back(cur);
    for (std::size_t t = from; t < indec.size(); ++t) {
      if (indec[t].second > left) continue;
      cur.push_back(indec[t]);
      self(self, t, left - indec[t].second);
      cur.pop_back();
    }
  };
  rec(rec, 0, bound);
  return out;
}

SubcategoryLattice enumerate_subcategories(const FiniteRingTable& r, unsigned length_bound, const Limits& limits) {
  if (length_bound > limits.max_module_length)
    throw Error("length bound exceeded: " + std::to_string(length_bound) + " > " +
                std::to_string(limits.max_module_length));
  SubcategoryLattice out;
  for (std::size_t i = 0; i < r.primes().size(); ++i)
    for (unsigned k = 1; k <= r.primes()[i].length; ++k) out.indecomposables.push_back({i, k});
  const std::size_t t_count = out.indecomposables.size();
  if (t_count > 20) throw Error("too many indecomposables for the oracle");
  auto bit_of = [&](std::size_t i, unsigned k) {
    for (std::size_t t = 0; t < t_count; ++t)
      if (out.indecomposables[t].prime == i && out.indecomposables[t].exponent == k) return t;
    throw Error("internal: unknown indecomposable");
  };
  auto in_class = [&](const ModuleType& type, std::uint32_t mask) {
    for (std::size_t i = 0; i < type.size(); ++i)
      for (unsigned k = 1; k <= type[i].size(); ++k)
        if (type[i][k - 1] > 0 && !((mask >> bit_of(i, k)) & 1U)) return false;
    return true;
  };

  struct Witness {
    ModuleType whole;
    std::set<std::pair<ModuleType, ModuleType>> pieces;  // (N, B/N)
  };
  std::vector<Witness> witnesses;
  for (const auto& summands : modules_up_to(r, length_bound)) {
    if (summands.empty()) continue;
    const FiniteModule b = FiniteModule::from_type(r, summands);
    Witness w{b.type(), {}};
    for (const auto& n : b.submodules()) w.pieces.emplace(b.type_of(n), b.quotient_type(n));
    witnesses.push_back(std::move(w));
  }
  out.modules_checked = witnesses.size();

  std::vector<std::size_t> ann(t_count);
  for (std::size_t t = 0; t < t_count; ++t)
    ann[t] = FiniteModule::from_type(r, {{out.indecomposables[t].prime, out.indecomposables[t].exponent}}).annihilator();
  const FiniteModule regular = FiniteModule::regular(r);
  std::vector<ModuleType> cyclic(r.ideal_count());
  for (std::size_t l = 0; l < r.ideal_count(); ++l) cyclic[l] = regular.quotient_type(r.ideal(l));

  for (std::uint32_t mask = 0; mask < (1U << t_count); ++mask) {
    bool preloc = true;
    for (const auto& w : witnesses) {
      if (!in_class(w.whole, mask)) continue;
      for (const auto& [n, q] : w.pieces)
        if (!in_class(n, mask) || !in_class(q, mask)) preloc = false;
      if (!preloc) break;
    }
    if (!preloc) continue;
    Subcategory s;
    s.members = mask;
    s.exponents.assign(r.primes().size(), 0);
    for (std::size_t t = 0; t < t_count; ++t)
      if ((mask >> t) & 1U) {
        auto& e = s.exponents[out.indecomposables[t].prime];
        e = std::max(e, out.indecomposables[t].exponent);
      }
    s.localizing = true;
    for (const auto& w : witnesses) {
      if (in_class(w.whole, mask)) continue;
      for (const auto& [n, q] : w.pieces)
        if (in_class(n, mask) && in_class(q, mask)) s.localizing = false;
      if (!s.localizing) break;
    }
    std::size_t common = r.unit_ideal();
    for (std::size_t t = 0; t < t_count; ++t)
      if ((mask >> t) & 1U) common = r.ideal_intersection(common, ann[t]);
    s.closed = true;
    for (std::size_t t = 0; t < t_count; ++t)
      if (r.ideal_contains(ann[t], common) != static_cast<bool>((mask >> t) & 1U)) s.closed = false;
    s.bilocalizing = s.localizing && s.closed;
    for (std::size_t l = 0; l < r.ideal_count(); ++l)
      if (in_class(cyclic[l], mask)) s.filter.members |= 1U << l;
    out.subcategories.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t to_oracle_ideal(const FiniteRingTable& r, const IdealSheaf& ideal) {
  const Poly g = ideal.to_affine().generator();
  return r.principal_ideal(r.element_of(g.prime()));
}

IdealSheaf from_oracle_ideal(const FiniteRingTable& r, const Scheme& scheme, std::size_t i) {
  return IdealSheaf::from_affine(scheme, AffineIdeal::principal(Poly(r.ideal_generator(i))));
}

ExplicitFilter to_explicit(const FiniteRingTable& r, const LocalFilter& f) {
  ExplicitFilter out;
  for (std::size_t i = 0; i < r.ideal_count(); ++i)
    if (contains(f, from_oracle_ideal(r, f.scheme(), i))) out.members |= 1U << i;
  return out;
}

std::vector<LocalFilter> enumerate_symbolic_filters(const Scheme& quotient) {
  const auto points = quotient.finite_points();
  std::vector<unsigned> choice(points.size(), 0);
  std::vector<LocalFilter> out;
  for (;;) {
    std::map<SpecPoint, Level> ex;
    ComponentSet killed;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (choice[i] == quotient.stalk(points[i]).length)
        killed.insert(static_cast<std::int64_t>(i));
      else
        ex.emplace(points[i], Level::finite(choice[i]));
    }
    out.push_back(LocalFilter::from_exponents(quotient, ExponentFunction(Level::finite(0), std::move(ex)), killed));
    std::size_t i = 0;
    while (i < points.size() && choice[i] == quotient.stalk(points[i]).length) choice[i++] = 0;
    if (i == points.size()) break;
    ++choice[i];
  }
  return out;
}

TorsionSheafData to_sheaf_data(const FiniteRingTable& r, const Scheme& scheme,
                               const std::vector<std::pair<std::size_t, unsigned>>& summands) {
  std::vector<TorsionSheafData::Divisor> divs;
  for (const auto& [i, k] : summands) divs.emplace_back(SpecPoint::closed(r.primes()[i].generator), k);
  return TorsionSheafData(scheme, std::move(divs));
}

bool OracleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed; });
}

namespace {

std::string module_name(const FiniteRingTable& r, const std::vector<std::pair<std::size_t, unsigned>>& summands) {
  if (summands.empty()) return "0";
  std::string out;
  for (const auto& [i, k] : summands) {
    if (!out.empty()) out += " + ";
    out += "R/(" + r.primes()[i].generator.pow(k).to_string() + ")";
  }
  return out;
}

}  // namespace

OracleReport verify(const QuotientRing& ring, unsigned length_bound, const Limits& limits) {
  OracleReport rep;
  rep.ring = ring.to_string();
  const FiniteRingTable r = FiniteRingTable::build(ring, limits);
  const Scheme scheme = Scheme::affine_quotient(ring, limits);
  const auto filters = enumerate_filters(r, limits);
  rep.ideals = r.ideal_count();
  rep.filters = filters.size();
  const std::string where = "ring " + rep.ring + ": ";

  auto fail = [&](OracleCheck& c, const std::string& what) {
    if (c.passed) c.counterexample = where + what;
    c.passed = false;
  };

  const auto symbolic = enumerate_symbolic_filters(scheme);
  std::vector<ExplicitFilter> images;
  for (const auto& f : symbolic) images.push_back(to_explicit(r, f));

  {
    OracleCheck c{"filters-bijective"};
    c.cases = symbolic.size();
    std::set<ExplicitFilter> img(images.begin(), images.end()), all(filters.begin(), filters.end());
    if (img.size() != images.size()) fail(c, "two symbolic filters share an image");
    if (img != all)
      fail(c, std::to_string(img.size()) + " symbolic filters vs " + std::to_string(all.size()) + " enumerated");
    rep.checks.push_back(c);
  }
  {
    OracleCheck c{"prelocalizing"};
    for (auto f : filters) {
      ++c.cases;
      if (!check_prelocalizing(r, f)) fail(c, "filter " + describe(r, f) + " fails the a^{-1}L test");
    }
    rep.checks.push_back(c);
  }
  {
    OracleCheck c{"product-two-ways"};
    for (auto f : filters)
      for (auto g : filters) {
        ++c.cases;
        const auto pr = product_two_ways(r, f, g);
        if (!pr.equal)
          fail(c, describe(r, f) + " * " + describe(r, g) + ": via a^{-1}L " + describe(r, pr.via_inverse) +
                      ", via I1I2 " + describe(r, pr.via_ideals));
      }
    rep.checks.push_back(c);
  }
  {
    OracleCheck prod{"symbolic-product"}, mt{"symbolic-meet"}, jn{"symbolic-join"};
    for (std::size_t i = 0; i < symbolic.size(); ++i)
      for (std::size_t j = 0; j < symbolic.size(); ++j) {
        ++prod.cases;
        ++mt.cases;
        ++jn.cases;
        const std::string pair = describe(r, images[i]) + " and " + describe(r, images[j]);
        const auto want = product_two_ways(r, images[i], images[j]).via_ideals;
        const auto got = to_explicit(r, product(symbolic[i], symbolic[j]));
        if (got != want) fail(prod, pair + ": engine " + describe(r, got) + ", oracle " + describe(r, want));
        const ExplicitFilter m{images[i].members & images[j].members};
        const auto gm = to_explicit(r, meet(symbolic[i], symbolic[j]));
        if (gm != m) fail(mt, pair + ": engine " + describe(r, gm) + ", oracle " + describe(r, m));
        const auto jw = filter_closure(r, images[i].members | images[j].members);
        const auto gj = to_explicit(r, join(symbolic[i], symbolic[j]));
        if (gj != jw) fail(jn, pair + ": engine " + describe(r, gj) + ", oracle " + describe(r, jw));
      }
    rep.checks.push_back(prod);
    rep.checks.push_back(mt);
    rep.checks.push_back(jn);
  }
  {
    OracleCheck c{"gabriel-iff-product-closed"};
    for (auto f : filters) {
      ++c.cases;
      if (is_gabriel(r, f) != is_closed_under_products(r, f)) fail(c, "filter " + describe(r, f));
    }
    for (std::size_t i = 0; i < symbolic.size(); ++i) {
      ++c.cases;
      if (is_product_closed(symbolic[i]) != is_gabriel(r, images[i]))
        fail(c, "engine disagrees on product closure of " + describe(r, images[i]));
    }
    rep.checks.push_back(c);
  }
  {
    OracleCheck c{"principal"};
    for (std::size_t i = 0; i < symbolic.size(); ++i) {
      ++c.cases;
      const auto mine = is_principal(symbolic[i]);
      const auto least = least_member(r, images[i]);
      if (!mine || !least || to_oracle_ideal(r, *mine) != *least)
        fail(c, "filter " + describe(r, images[i]) + ": engine minimum " + (mine ? mine->to_string() : "none") +
                    ", oracle " + (least ? r.ideal_name(*least) : "none"));
    }
    rep.checks.push_back(c);
  }
  {
    OracleCheck c{"generate"};
    for (std::size_t i = 0; i < r.ideal_count(); ++i)
      for (std::size_t j = 0; j < r.ideal_count(); ++j) {
        ++c.cases;
        const auto got = to_explicit(r, generate(scheme, {from_oracle_ideal(r, scheme, i), from_oracle_ideal(r, scheme, j)}));
        const auto want = filter_closure(r, (1U << i) | (1U << j));
        if (got != want)
          fail(c, "generators " + r.ideal_name(i) + ", " + r.ideal_name(j) + ": engine " + describe(r, got) +
                      ", oracle " + describe(r, want));
      }
    rep.checks.push_back(c);
  }
  {
    OracleCheck c{"membership"};
    for (const auto& summands : modules_up_to(r, length_bound)) {
      const FiniteModule m = FiniteModule::from_type(r, summands);
      std::vector<std::size_t> anns;
      for (unsigned u = 0; u < m.size(); ++u) anns.push_back(m.element_annihilator(u));
      const TorsionSheafData data = to_sheaf_data(r, scheme, summands);
      for (std::size_t i = 0; i < symbolic.size(); ++i) {
        ++c.cases;
        const bool brute = std::all_of(anns.begin(), anns.end(), [&](std::size_t a) { return images[i].contains(a); });
        if (member(data, symbolic[i]) != brute)
          fail(c, "module " + module_name(r, summands) + ", filter " + describe(r, images[i]) + ": engine " +
                      (brute ? "false" : "true") + ", elementwise " + (brute ? "true" : "false"));
      }
    }
    rep.checks.push_back(c);
  }
  {
    OracleCheck c{"subcategories"};
    const auto lat = enumerate_subcategories(r, length_bound, limits);
    c.cases = lat.subcategories.size();
    auto& counts = rep.subcategories;
    std::set<ExplicitFilter> seen;
    for (const auto& s : lat.subcategories) {
      ++counts.prelocalizing;
      counts.localizing += s.localizing;
      counts.closed += s.closed;
      counts.bilocalizing += s.bilocalizing;
      seen.insert(s.filter);
      const auto it = std::find(images.begin(), images.end(), s.filter);
      if (it == images.end()) {
        fail(c, "subcategory with filter " + describe(r, s.filter) + " has no symbolic filter");
        continue;
      }
      const ClassificationReport cr = classify(symbolic[static_cast<std::size_t>(it - images.begin())]);
      if (cr.localizing != s.localizing || cr.closed != s.closed || cr.bilocalizing != s.bilocalizing ||
          s.localizing != is_gabriel(r, s.filter))
        fail(c, "flags disagree for " + describe(r, s.filter));
    }
    if (seen.size() != lat.subcategories.size() || seen.size() != filters.size())
      fail(c, std::to_string(lat.subcategories.size()) + " subcategories vs " + std::to_string(filters.size()) +
                  " filters");
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace qfilt::oracle

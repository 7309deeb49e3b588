#include "qfilt/point.hpp"

#include <cctype>

#include "qfilt/error.hpp"

namespace qfilt {

namespace {

bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

SpecPoint SpecPoint::closed(const PrimePoly& irreducible) {
  if (!is_irreducible(irreducible))
    throw Error("'" + irreducible.to_string() + "' is not irreducible, so it names no closed point");
  return SpecPoint(Kind::Closed, irreducible.monic(), 0);
}

SpecPoint SpecPoint::label(std::string name) {
  if (!valid_label(name)) throw Error("invalid point label '" + name + "'");
  if (name == "inf") throw Error("label 'inf' is reserved for the point at infinity");
  return SpecPoint(Kind::Closed, std::move(name), 0);
}

Poly SpecPoint::generator(const BaseField& field) const {
  if (kind_ != Kind::Closed) throw Error(to_string() + " has no affine generator");
  if (has_poly()) return Poly(poly());
  return Poly(field, FactoredPoly::linear(label_name()));
}

std::string SpecPoint::to_string() const {
  switch (kind_) {
    case Kind::Closed: return "pt:" + (has_poly() ? poly().to_string() : label_name());
    case Kind::Infinity: return "pt:inf";
    case Kind::Generic: return "gen";
    case Kind::Component: return "comp:" + std::to_string(index_);
  }
  return {};
}

std::strong_ordering operator<=>(const SpecPoint& a, const SpecPoint& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.index_ <=> b.index_; c != 0) return c;
  if (a.id_.index() != b.id_.index()) return a.id_.index() <=> b.id_.index();
  if (a.has_poly()) return a.poly() <=> b.poly();
  if (a.has_label()) return a.label_name() <=> b.label_name();
  return std::strong_ordering::equal;
}

SpecPoint parse_point(std::string_view text, const BaseField& field) {
  if (text == "gen") return SpecPoint::generic();
  if (text.starts_with("comp:")) {
    const std::string digits(text.substr(5));
    std::size_t used = 0;
    std::int64_t idx = 0;
    try {
      idx = std::stoll(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size()) throw Error("invalid component literal '" + std::string(text) + "'");
    return SpecPoint::component(idx);
  }
  if (text.starts_with("pt:")) text.remove_prefix(3);
  if (text == "inf") return SpecPoint::infinity();
  if (field.is_symbolic()) return SpecPoint::label(std::string(text));
  const PrimePoly p = parse_prime_poly(text, field.characteristic());
  return SpecPoint::closed(p);
}

}  // namespace qfilt

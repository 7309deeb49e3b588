#include "qfilt/field.hpp"

#include "qfilt/error.hpp"

namespace qfilt {

bool is_prime(unsigned n) noexcept {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

BaseField BaseField::prime(unsigned p, const Limits& limits) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  if (p > limits.max_prime)
    throw Error("prime " + std::to_string(p) + " exceeds bound " + std::to_string(limits.max_prime));
  return BaseField(p, "F" + std::to_string(p));
}

BaseField BaseField::symbolic(std::string name) {
  if (name.empty()) throw Error("symbolic field needs a name");
  return BaseField(0, std::move(name));
}

std::string BaseField::to_string() const { return name_; }

}  // namespace qfilt

#include "drazinlab/field.hpp"

#include <cmath>

namespace drazinlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

Zp Zp::inverse() const {
  if (value_ == 0) throw Singular("zero has no inverse in GF(" + std::to_string(modulus_) + ")");
  // Extended Euclid on (value, modulus).
  std::int64_t r0 = modulus_, r1 = value_;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += modulus_;
  return {static_cast<std::uint64_t>(t0), modulus_};
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InvalidField("GF(p) modulus must be prime, got " + std::to_string(p));
}

ComplexField::ComplexField(double eps_rel) : eps_(eps_rel) {
  if (!(eps_rel > 0.0) || !std::isfinite(eps_rel)) {
    throw InvalidField("complex tolerance must be positive and finite");
  }
}

std::string field_name(const FieldSpec& field) {
  return std::visit([](const auto& f) { return f.name(); }, field);
}

}  // namespace drazinlab

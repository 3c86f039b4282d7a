#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>

#include <boost/multiprecision/gmp.hpp>

#include "drazinlab/errors.hpp"

namespace drazinlab {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Complex = std::complex<double>;

inline constexpr double kDefaultComplexEps = 1e-9;

bool is_prime(std::uint64_t n);

/// Residue modulo a prime. The modulus travels with the value so that the
/// usual operators work without a field context.
class Zp {
 public:
  Zp() = default;
  Zp(std::uint64_t value, std::uint32_t modulus)
      : value_(static_cast<std::uint32_t>(value % modulus)), modulus_(modulus) {}

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  Zp inverse() const;

  friend Zp operator+(Zp x, Zp y) {
    std::uint64_t s = std::uint64_t{x.value_} + y.value_;
    return {s >= x.modulus_ ? s - x.modulus_ : s, x.modulus_};
  }
  friend Zp operator-(Zp x, Zp y) {
    std::uint64_t s = std::uint64_t{x.value_} + x.modulus_ - y.value_;
    return {s, x.modulus_};
  }
  friend Zp operator*(Zp x, Zp y) {
    return {std::uint64_t{x.value_} * y.value_, x.modulus_};
  }
  friend Zp operator/(Zp x, Zp y) { return x * y.inverse(); }
  Zp operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_}; }

  Zp& operator+=(Zp y) { return *this = *this + y; }
  Zp& operator-=(Zp y) { return *this = *this - y; }
  Zp& operator*=(Zp y) { return *this = *this * y; }

  friend bool operator==(Zp x, Zp y) { return x.value_ == y.value_; }

 private:
  std::uint32_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

// Field descriptors. Each one builds elements and decides what "zero"
// means; matrices carry the descriptor they were built over.

struct RationalField {
  using Element = Rational;
  static constexpr bool exact = true;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(v); }
  bool is_zero(const Element& x) const { return x == 0; }
  std::string name() const { return "rational"; }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

class PrimeField {
 public:
  using Element = Zp;
  static constexpr bool exact = true;

  /// Throws InvalidField unless p is a prime.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }
  Element zero() const { return {0, p_}; }
  Element one() const { return {1, p_}; }
  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint64_t>(r), p_};
  }
  bool is_zero(const Element& x) const { return x.value() == 0; }
  std::string name() const { return "gfp"; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

class ComplexField {
 public:
  using Element = Complex;
  static constexpr bool exact = false;

  /// eps_rel is the relative tolerance behind equality, rank and
  /// nilpotency decisions. Must be positive.
  explicit ComplexField(double eps_rel = kDefaultComplexEps);

  double eps() const noexcept { return eps_; }
  Element zero() const { return {0.0, 0.0}; }
  Element one() const { return {1.0, 0.0}; }
  Element from_int(long long v) const { return {static_cast<double>(v), 0.0}; }
  bool is_zero(const Element& x) const { return x == Element{}; }
  std::string name() const { return "complex"; }

  friend bool operator==(const ComplexField&, const ComplexField&) = default;

 private:
  double eps_;
};

using FieldSpec = std::variant<RationalField, PrimeField, ComplexField>;

std::string field_name(const FieldSpec& field);

/// Squared contribution of one entry to the residual norm. Rationals and
/// complex numbers use |x|^2; residues count 1 per nonzero entry, so the
/// GF(p) "norm" is the square root of the Hamming weight.
inline double entry_weight(const Rational& x) {
  double v = x.convert_to<double>();
  return v * v;
}
inline double entry_weight(const Zp& x) { return x.value() == 0 ? 0.0 : 1.0; }
inline double entry_weight(const Complex& x) { return std::norm(x); }

}  // namespace drazinlab

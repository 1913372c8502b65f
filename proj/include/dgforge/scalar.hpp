#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace dgforge {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/**
 * Element of a prime field with the prime carried at runtime.
 *
 * A modulus of 0 marks an integer literal that is not yet bound to a field
 * (Eigen builds Zero() and Identity() that way); it is reduced as soon as it
 * meets a bound value.
 */
class Fp {
 public:
  Fp() = default;
  Fp(int v) : value_(v) {}
  Fp(long v) : value_(v) {}
  Fp(std::uint32_t p, std::int64_t v) : value_(reduce(v, p)), modulus_(p) {}

  std::uint32_t modulus() const { return modulus_; }
  std::int64_t value() const { return reduce(value_, modulus_); }
  bool is_zero() const { return value() == 0; }

  Fp inverse() const;

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  friend Fp operator/(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a) { return Fp(0) - a; }
  friend bool operator==(const Fp& a, const Fp& b);
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value(); }

 private:
  static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    if (p == 0) return v;
    v %= static_cast<std::int64_t>(p);
    return v < 0 ? v + p : v;
  }
  static std::uint32_t common(const Fp& a, const Fp& b);

  std::int64_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

inline std::uint32_t Fp::common(const Fp& a, const Fp& b) {
  if (a.modulus_ && b.modulus_ && a.modulus_ != b.modulus_)
    throw std::domain_error("mixing elements of different prime fields");
  return a.modulus_ ? a.modulus_ : b.modulus_;
}

inline Fp operator+(const Fp& a, const Fp& b) {
  auto p = Fp::common(a, b);
  if (!p) return Fp(static_cast<long>(a.value_ + b.value_));
  return Fp(p, Fp::reduce(a.value_, p) + Fp::reduce(b.value_, p));
}

inline Fp operator-(const Fp& a, const Fp& b) {
  auto p = Fp::common(a, b);
  if (!p) return Fp(static_cast<long>(a.value_ - b.value_));
  return Fp(p, Fp::reduce(a.value_, p) - Fp::reduce(b.value_, p));
}

inline Fp operator*(const Fp& a, const Fp& b) {
  auto p = Fp::common(a, b);
  if (!p) return Fp(static_cast<long>(a.value_ * b.value_));
  auto x = static_cast<std::uint64_t>(Fp::reduce(a.value_, p));
  auto y = static_cast<std::uint64_t>(Fp::reduce(b.value_, p));
  return Fp(p, static_cast<std::int64_t>((x * y) % p));
}

inline Fp Fp::inverse() const {
  if (modulus_ == 0) {
    if (value_ == 1 || value_ == -1) return *this;
    throw std::domain_error("inverse of an unbound field literal");
  }
  std::int64_t a = value(), m = modulus_, x0 = 1, x1 = 0;
  if (a == 0) throw std::domain_error("division by zero in F_p");
  while (m != 0) {
    std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(modulus_, x0);
}

inline Fp operator/(const Fp& a, const Fp& b) {
  auto p = Fp::common(a, b);
  Fp bb = p ? Fp(p, b.value_) : b;
  return a * bb.inverse();
}

inline bool operator==(const Fp& a, const Fp& b) {
  auto p = Fp::common(a, b);
  return Fp::reduce(a.value_, p) == Fp::reduce(b.value_, p);
}

/** The coefficient field of an algebra: Q or F_p. */
struct FieldSpec {
  std::uint32_t prime = 0;  // 0 means Q

  static FieldSpec rational() { return {}; }
  static FieldSpec prime_field(std::uint32_t p);
  static FieldSpec parse(const std::string& text);

  bool is_rational() const { return prime == 0; }
  std::string to_string() const { return prime ? "F" + std::to_string(prime) : "Q"; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Fp& x) { return x.is_zero(); }

std::string to_string(const Rational& x);
std::string to_string(const Fp& x);

template <class K> struct ScalarTraits;

template <> struct ScalarTraits<Rational> {
  static constexpr const char* name = "rational";
  static Rational make(const FieldSpec&, long v) { return Rational(v); }
  static Rational parse(const FieldSpec& f, const std::string& text);
  static bool accepts(const FieldSpec& f) { return f.is_rational(); }
};

template <> struct ScalarTraits<Fp> {
  static constexpr const char* name = "prime";
  static Fp make(const FieldSpec& f, long v) { return Fp(f.prime, v); }
  static Fp parse(const FieldSpec& f, const std::string& text);
  static bool accepts(const FieldSpec& f) { return !f.is_rational(); }
};

template <class K> K scalar(const FieldSpec& f, long v) { return ScalarTraits<K>::make(f, v); }

inline int koszul_sign(long a, long b) { return ((a * b) % 2 == 0) ? 1 : -1; }
inline int parity_sign(long a) { return (a % 2 == 0) ? 1 : -1; }

}  // namespace dgforge

namespace Eigen {

template <> struct NumTraits<dgforge::Fp> : GenericNumTraits<dgforge::Fp> {
  typedef dgforge::Fp Real;
  typedef dgforge::Fp NonInteger;
  typedef dgforge::Fp Literal;
  typedef dgforge::Fp Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

#pragma once

// Coefficient fields. Two backends: the rationals (GMP) and prime fields
// F_p with p < 2^32. Algorithms are templated on the field type and take the
// field object by const reference; elements of both backends support the
// usual arithmetic operators.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gvtk/error.hpp"

namespace gvtk {

inline constexpr std::uint64_t kDefaultPrime = 1000003;

// Element of F_p. The modulus travels with the value so that operators work
// without a field handle. A default-constructed element is an unbound zero
// and adopts the modulus of whatever it is combined with.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
  friend bool operator<(const Fp& a, const Fp& b) { return a.v < b.v; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t m = a.p ? a.p : b.p;
    std::uint64_t s = a.v + b.v;
    if (m && s >= m) s -= m;
    return {s, m};
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t m = a.p ? a.p : b.p;
    std::uint64_t s = a.v >= b.v ? a.v - b.v : a.v + m - b.v;
    return {s, m};
  }
  friend Fp operator-(const Fp& a) { return {a.v == 0 ? 0 : a.p - a.v, a.p}; }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t m = a.p ? a.p : b.p;
    return {m ? (a.v * b.v) % m : 0, m};
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (v == 0) throw InputError("division by zero in F_p");
    // Fermat: v^(p-2)
    std::uint64_t base = v, e = p - 2, r = 1;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return {r, p};
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }
};

inline std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v; }

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

class RationalField {
 public:
  using Elem = mpq_class;

  Elem operator()(long long n) const { return Elem(mpz_class(std::to_string(n))); }
  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_rational(const mpq_class& q) const {
    Elem r = q;
    r.canonicalize();
    return r;
  }

  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw InputError("division by zero in Q");
    Elem r = 1 / a;
    return r;
  }
  std::string str(const Elem& a) const { return a.get_str(); }
  std::string spec() const { return "rationals"; }
  std::uint64_t characteristic() const { return 0; }

  // Multiplicative order if it is at most `bound`. Only +-1 are torsion in Q.
  std::optional<std::uint64_t> torsion_order(const Elem& a, std::uint64_t bound) const {
    if (a == 1) return 1;
    if (a == -1 && bound >= 2) return 2;
    return std::nullopt;
  }
  Elem root_of_unity(std::uint64_t n, long long a) const {
    if (n == 1) return one();
    if (n == 2) return (a % 2 == 0) ? one() : Elem(-1);
    throw InputError("Q has no primitive root of unity of order " + std::to_string(n));
  }
};

class PrimeField {
 public:
  using Elem = Fp;

  explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p >= (std::uint64_t{1} << 32)) throw InputError("prime must be below 2^32");
    if (!detail::is_prime_u64(p)) throw InputError(std::to_string(p) + " is not prime");
  }

  std::uint64_t prime() const { return p_; }

  Elem operator()(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return {static_cast<std::uint64_t>(r), p_};
  }
  Elem zero() const { return {0, p_}; }
  Elem one() const { return {1 % p_, p_}; }
  Elem from_rational(const mpq_class& q) const {
    mpz_class pz(std::to_string(p_));
    mpz_class num = q.get_num() % pz, den = q.get_den() % pz;
    if (num < 0) num += pz;
    if (den == 0) throw InputError("denominator " + q.get_den().get_str() + " vanishes mod " + std::to_string(p_));
    Elem n{num.get_ui(), p_}, d{den.get_ui(), p_};
    return n / d;
  }

  static bool is_zero(const Elem& a) { return a.v == 0; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  std::string str(const Elem& a) const { return std::to_string(a.v); }
  std::string spec() const { return "fp:" + std::to_string(p_); }
  std::uint64_t characteristic() const { return p_; }

  std::optional<std::uint64_t> torsion_order(const Elem& a, std::uint64_t bound) const {
    if (a.v == 0) return std::nullopt;
    for (std::uint64_t n = 1; n <= bound && n <= p_ - 1; ++n) {
      if ((p_ - 1) % n != 0) continue;
      if (power(a, n).v == 1) return n;
    }
    return std::nullopt;
  }

  // Smallest generator of the cyclic group F_p^*.
  Elem generator() const {
    if (p_ == 2) return one();
    auto factors = detail::prime_factors(p_ - 1);
    for (std::uint64_t g = 2; g < p_; ++g) {
      Elem e{g, p_};
      bool ok = true;
      for (auto q : factors)
        if (power(e, (p_ - 1) / q).v == 1) { ok = false; break; }
      if (ok) return e;
    }
    throw InvariantError("no generator found");
  }

  // zeta_n^a for the fixed primitive n-th root zeta_n = g^((p-1)/n).
  Elem root_of_unity(std::uint64_t n, long long a) const {
    if (n == 0 || (p_ - 1) % n != 0)
      throw InputError("F_" + std::to_string(p_) + " has no primitive root of unity of order " +
                       std::to_string(n) + "; use a prime p = 1 mod " + std::to_string(n) +
                       ", e.g. " + std::to_string(suggest_prime(n, p_)));
    Elem zeta = power(generator(), (p_ - 1) / n);
    long long e = a % static_cast<long long>(n);
    if (e < 0) e += static_cast<long long>(n);
    return power(zeta, static_cast<std::uint64_t>(e));
  }

  // Smallest prime q > floor with q = 1 mod n.
  static std::uint64_t suggest_prime(std::uint64_t n, std::uint64_t floor) {
    std::uint64_t q = floor - floor % n + 1;
    while (q <= floor || !detail::is_prime_u64(q)) q += n;
    return q;
  }

  static Elem power(Elem base, std::uint64_t e) {
    Elem r{1 % base.p, base.p};
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

 private:
  std::uint64_t p_;
};

template <class F>
concept Field = requires(const F& k, const typename F::Elem& a, long long n) {
  { k(n) } -> std::convertible_to<typename F::Elem>;
  { k.zero() } -> std::convertible_to<typename F::Elem>;
  { k.one() } -> std::convertible_to<typename F::Elem>;
  { F::is_zero(a) } -> std::convertible_to<bool>;
  { k.inv(a) } -> std::convertible_to<typename F::Elem>;
  { k.str(a) } -> std::convertible_to<std::string>;
};

// a^e for any integer e; negative exponents invert.
template <Field F>
typename F::Elem power(const F& k, const typename F::Elem& a, long long e) {
  typename F::Elem base = e < 0 ? k.inv(a) : a;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  typename F::Elem r = k.one();
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

}  // namespace gvtk

#pragma once

// Exact integer primitives shared by every other module.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace consq {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an argument falls outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Positive rational eta/delta kept in lowest terms.
class RatioMu {
 public:
  /// Throws DomainError unless eta, delta >= 1 and gcd(eta, delta) == 1.
  RatioMu(BigInt eta, BigInt delta);

  const BigInt& eta() const noexcept { return eta_; }
  const BigInt& delta() const noexcept { return delta_; }

  std::string to_string() const;

  friend bool operator==(const RatioMu&, const RatioMu&) = default;

 private:
  BigInt eta_;
  BigInt delta_;
};

/// Floor of the square root. Throws DomainError for n < 0.
BigInt isqrt(const BigInt& n);

/// Root r with r*r == n, or nullopt. Throws DomainError for n < 0.
std::optional<BigInt> is_perfect_square(const BigInt& n);

BigInt gcd(const BigInt& a, const BigInt& b);

/// (p/g, q/g) with g = gcd(p, q). Throws DomainError unless p, q >= 1.
RatioMu reduce_fraction(const BigInt& p, const BigInt& q);

/// Non-negative residue of n modulo a small positive modulus.
unsigned residue(const BigInt& n, unsigned modulus);

/// Parses a base-10 integer; throws DomainError on malformed text.
BigInt parse_bigint(const std::string& text);

}  // namespace consq

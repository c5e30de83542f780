#include "consq/arith.hpp"

#include <array>

namespace consq {

namespace {

// Quadratic residue tables for the moduli 64, 63, 65 and 11. A value that
// is a non-residue for any of them cannot be a square; together they reject
// all but under 1% of non-squares before the Newton iteration runs.
constexpr unsigned kSieveModulus = 64u * 63u * 65u * 11u;

template <unsigned Mod>
constexpr std::array<bool, Mod> quadratic_residues() {
  std::array<bool, Mod> table{};
  for (unsigned x = 0; x < Mod; ++x) table[(x * x) % Mod] = true;
  return table;
}

constexpr auto kQr64 = quadratic_residues<64>();
constexpr auto kQr63 = quadratic_residues<63>();
constexpr auto kQr65 = quadratic_residues<65>();
constexpr auto kQr11 = quadratic_residues<11>();

bool passes_square_sieve(const BigInt& n) {
  const unsigned r = residue(n, kSieveModulus);
  return kQr64[r % 64] && kQr63[r % 63] && kQr65[r % 65] && kQr11[r % 11];
}

}  // namespace

RatioMu::RatioMu(BigInt eta, BigInt delta) : eta_(std::move(eta)), delta_(std::move(delta)) {
  if (eta_ < 1 || delta_ < 1) throw DomainError("ratio terms must be positive");
  if (consq::gcd(eta_, delta_) != 1) throw DomainError("ratio " + to_string() + " is not reduced");
}

std::string RatioMu::to_string() const { return eta_.str() + "/" + delta_.str(); }

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of negative value");
  if (n < 2) return n;
  // Start above the root: 2^(floor(bits/2)+1) > sqrt(n). From there Newton's
  // step is strictly decreasing until it reaches floor(sqrt(n)).
  const unsigned bits = boost::multiprecision::msb(n);
  BigInt x = BigInt(1) << (bits / 2 + 1);
  for (;;) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

std::optional<BigInt> is_perfect_square(const BigInt& n) {
  if (n < 0) throw DomainError("square test of negative value");
  if (!passes_square_sieve(n)) return std::nullopt;
  BigInt r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

RatioMu reduce_fraction(const BigInt& p, const BigInt& q) {
  if (p < 1 || q < 1) throw DomainError("reduce_fraction requires p, q >= 1");
  const BigInt g = gcd(p, q);
  return RatioMu(p / g, q / g);
}

unsigned residue(const BigInt& n, unsigned modulus) {
  if (modulus == 0) throw DomainError("modulus must be positive");
  BigInt r = n % modulus;
  if (r < 0) r += modulus;
  return r.convert_to<unsigned>();
}

BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw DomainError("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw DomainError("malformed integer '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw DomainError("malformed integer '" + text + "'");
  }
  BigInt value(text.substr(start));
  return text[0] == '-' ? BigInt(-value) : value;
}

}  // namespace consq

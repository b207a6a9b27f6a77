#include "pf/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pf/arith.hpp"

namespace pf {
namespace {

void require_symbol_prime(const Int& p, unsigned l) {
  if (l < 3 || l % 2 == 0 || !is_prime(Int(l)))
    throw InvalidArgument("symbol degree l must be an odd prime, got " +
                          std::to_string(l));
  if ((p - 1) % l != 0)
    throw InvalidArgument("p = " + p.get_str() + " is not 1 mod " + std::to_string(l));
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 acc = 1, b = base % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t least_primitive_root(std::uint64_t p) {
  std::uint64_t phi = p - 1, rest = phi;
  std::vector<std::uint64_t> prime_factors;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      prime_factors.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) prime_factors.push_back(rest);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (std::uint64_t f : prime_factors) {
      if (pow_mod_u64(g, phi / f, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw InvariantViolation("no primitive root found mod " + std::to_string(p));
}

// index_mod_l[t] = ind_g(t) mod l for t in 1..p-1, g the least primitive root.
std::vector<unsigned> index_table(std::uint64_t p, unsigned l) {
  std::uint64_t g = least_primitive_root(p);
  std::vector<unsigned> table(p, 0);
  std::uint64_t val = 1;
  for (std::uint64_t i = 0; i + 1 < p; ++i) {
    table[val] = static_cast<unsigned>(i % l);
    val = static_cast<std::uint64_t>((unsigned __int128)val * g % p);
  }
  return table;
}

// bitmap of nonzero l-th power residues mod p
std::vector<bool> residue_table(std::uint64_t p, unsigned l) {
  std::vector<bool> is_residue(p, false);
  for (std::uint64_t x = 1; x < p; ++x)
    is_residue[pow_mod_u64(x, l, p)] = true;
  return is_residue;
}

}  // namespace

bool is_lth_power_residue(const Int& d, const Int& p, unsigned l) {
  require_symbol_prime(p, l);
  Int dm = d % p;
  if (dm < 0) dm += p;
  if (dm == 0)
    throw InvalidArgument("symbol undefined: p = " + p.get_str() + " divides d");
  Int e = (p - 1) / l;
  Int t;
  mpz_powm(t.get_mpz_t(), dm.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return t == 1;
}

unsigned residue_class_index(const Int& d, std::uint64_t p, unsigned l) {
  require_symbol_prime(Int(p), l);
  Int dm = d % p;
  if (dm < 0) dm += p;
  if (dm == 0)
    throw InvalidArgument("symbol undefined: p divides d");
  Int e = (Int(p) - 1) / l;
  Int t;
  mpz_powm(t.get_mpz_t(), dm.get_mpz_t(), e.get_mpz_t(), Int(p).get_mpz_t());
  // t is an l-th root of unity mod p: g^(c(p-1)/l) for exactly one c
  std::uint64_t g = least_primitive_root(p);
  std::uint64_t zeta = pow_mod_u64(g, (p - 1) / l, p);
  std::uint64_t target = mpz_get_ui(t.get_mpz_t());
  std::uint64_t acc = 1;
  for (unsigned c = 0; c < l; ++c) {
    if (acc == target) return c;
    acc = static_cast<std::uint64_t>((unsigned __int128)acc * zeta % p);
  }
  throw InvariantViolation("d^((p-1)/l) was not an l-th root of unity mod p");
}

std::vector<Int> CharacterSum::magnitude_squared_coefficients() const {
  std::vector<Int> b(l, 0);
  for (unsigned t = 0; t < l; ++t)
    for (unsigned u = 0; u < l; ++u)
      b[(t + l - u) % l] += coefficient_counts[t] * coefficient_counts[u];
  return b;
}

Int CharacterSum::magnitude_squared_exact() const {
  std::vector<Int> b = magnitude_squared_coefficients();
  // |S|^2 lies in the real cyclotomic subfield; it is rational exactly when
  // the off-diagonal coefficients coincide (always for l = 3, where the
  // real subfield is Q), and then Σ ζ^d = 0 gives |S|^2 = b_0 - b_1.
  for (unsigned d = 2; d < l; ++d)
    if (b[d] != b[1])
      throw InvalidArgument(
          "|S|^2 is irrational for this sum; use magnitude() instead");
  return b[0] - (l > 1 ? b[1] : Int(0));
}

std::complex<double> CharacterSum::value() const {
  std::complex<double> acc{0.0, 0.0};
  for (unsigned t = 0; t < l; ++t) {
    double angle = 2.0 * std::numbers::pi * t / l;
    acc += coefficient_counts[t].get_d() * std::complex<double>{std::cos(angle), std::sin(angle)};
  }
  return acc;
}

double CharacterSum::magnitude() const {
  std::vector<Int> b = magnitude_squared_coefficients();
  bool rational = true;
  for (unsigned d = 2; d < l && rational; ++d) rational = (b[d] == b[1]);
  long double m2;
  if (rational) {
    m2 = static_cast<long double>(Int(b[0] - (l > 1 ? b[1] : Int(0))).get_d());
  } else {
    m2 = 0.0L;
    for (unsigned d = 0; d < l; ++d) {
      long double angle = 2.0L * std::numbers::pi_v<long double> * d / l;
      m2 += static_cast<long double>(b[d].get_d()) * std::cos(angle);
    }
  }
  return static_cast<double>(std::sqrt(std::max(0.0L, m2)));
}

CharacterSum character_sum(std::span<const unsigned> exponents, std::uint64_t p,
                           unsigned l) {
  require_symbol_prime(Int(p), l);
  if (exponents.empty()) throw InvalidArgument("character_sum: empty exponent tuple");
  if (p <= exponents.size() - 1)
    throw InvalidArgument("character_sum: need p > k");
  for (unsigned r : exponents)
    if (r >= l) throw InvalidArgument("character_sum: exponents must lie in [0, l)");

  std::vector<unsigned> ind = index_table(p, l);
  CharacterSum out;
  out.p = p;
  out.l = l;
  out.exponents.assign(exponents.begin(), exponents.end());
  out.coefficient_counts.assign(l, 0);
  for (std::uint64_t n = 1; n <= p; ++n) {
    unsigned cls = 0;
    bool zero = false;
    for (std::size_t jj = 0; jj < exponents.size(); ++jj) {
      if (exponents[jj] == 0) continue;
      std::uint64_t arg = (n + jj) % p;
      if (arg == 0) {
        zero = true;
        break;
      }
      cls = (cls + exponents[jj] * ind[arg]) % l;
    }
    if (zero) {
      ++out.zero_terms;
    } else {
      out.coefficient_counts[cls] += 1;
    }
  }
  return out;
}

std::uint64_t count_consecutive_residues(std::uint64_t p, unsigned l, unsigned k) {
  require_symbol_prime(Int(p), l);
  if (p <= k + 1) throw InvalidArgument("count_consecutive_residues: need p > k+1");
  std::vector<bool> is_res = residue_table(p, l);
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n + k + 1 <= p; ++n) {
    bool all = true;
    for (unsigned j = 0; j <= k; ++j) {
      if (!is_res[n + j]) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

std::optional<std::uint64_t> find_m0_mod_p(std::uint64_t p, unsigned l, unsigned k,
                                           const Int& P) {
  require_symbol_prime(Int(p), l);
  if (p <= k) throw InvalidArgument("find_m0_mod_p: need p > k");
  Int g;
  Int pz(p);
  mpz_gcd(g.get_mpz_t(), P.get_mpz_t(), pz.get_mpz_t());
  if (g != 1) throw InvalidArgument("find_m0_mod_p: gcd(P, p) must be 1");
  std::vector<bool> is_res = residue_table(p, l);
  Int Pm = P % p;
  std::uint64_t Pu = mpz_get_ui(Pm.get_mpz_t());
  for (std::uint64_t m0 = 1; m0 < p; ++m0) {
    std::uint64_t t = pow_mod_u64(m0 * Pu % p, l, p);
    bool ok = true;
    for (unsigned j = 1; j <= k; ++j) {
      std::uint64_t arg = (t + j) % p;
      if (arg == 0 || !is_res[arg]) {
        ok = false;
        break;
      }
    }
    if (ok) return m0;
  }
  return std::nullopt;
}

}  // namespace pf

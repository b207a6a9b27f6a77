#include "pf/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

namespace pf {
namespace {

constexpr std::uint64_t kTrialDivisionBound = 10'000;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    for (std::uint64_t i = 2; i <= kTrialDivisionBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t m = i * i; m <= kTrialDivisionBound; m += i)
        composite[m] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const Int& n, const Int& n_minus_1, const Int& odd_part,
                        unsigned two_exponent, const Int& base) {
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned i = 1; i < two_exponent; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// splitmix64; used only to derive reproducible extra Miller-Rabin bases.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Budget {
  std::uint64_t remaining;
  const Int* n;
  void spend(std::uint64_t ops) {
    if (ops > remaining) throw BudgetExceeded(*n, 0);
    remaining -= ops;
  }
};

// Brent's cycle-finding variant of Pollard rho. Deterministic: fixed seed,
// polynomial constant c incremented on failure.
Int brent_rho(const Int& n, Budget& budget) {
  for (unsigned c = 1;; ++c) {
    Int y = 2, x, q = 1, factor = 1, ys;
    std::uint64_t r = 1;
    const std::uint64_t batch = 128;
    while (factor == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t done = 0;
      while (done < r && factor == 1) {
        ys = y;
        std::uint64_t steps = std::min(batch, r - done);
        budget.spend(steps);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          q = q * abs(diff) % n;
        }
        mpz_gcd(factor.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        done += steps;
      }
      r *= 2;
    }
    if (factor == n) {
      // backtrack one step at a time
      do {
        budget.spend(1);
        ys = (ys * ys + c) % n;
        Int diff = abs(Int(x - ys));
        mpz_gcd(factor.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (factor == 1);
    }
    if (factor != n) return factor;
    // cycle degenerated for this c; retry with the next constant
  }
}

void push_factor(std::vector<FactorEntry>& entries, const Int& p, unsigned e) {
  for (auto& fe : entries) {
    if (fe.prime == p) {
      fe.exponent += e;
      return;
    }
  }
  entries.push_back({p, e});
}

void factor_recursive(const Int& n, std::vector<FactorEntry>& entries,
                      Budget& budget);

// n has no factor below the trial-division bound.
void factor_hard(const Int& n, std::vector<FactorEntry>& entries, Budget& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    push_factor(entries, n, 1);
    return;
  }
  // perfect powers first: rho stalls on them
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned e = 2; ; ++e) {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
        std::vector<FactorEntry> base;
        factor_recursive(root, base, budget);
        for (const auto& fe : base) push_factor(entries, fe.prime, fe.exponent * e);
        return;
      }
      if (root < 2) break;  // no exact root exists after all
    }
  }
  Int d = brent_rho(n, budget);
  factor_recursive(d, entries, budget);
  factor_recursive(n / d, entries, budget);
}

void factor_recursive(const Int& n, std::vector<FactorEntry>& entries,
                      Budget& budget) {
  Int rest = n;
  for (std::uint64_t p : small_primes()) {
    budget.spend(1);
    if (Int(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      push_factor(entries, Int(p), e);
    }
  }
  if (rest > 1) {
    if (rest <= kTrialDivisionBound * kTrialDivisionBound) {
      push_factor(entries, rest, 1);  // below the bound squared: prime
    } else {
      factor_hard(rest, entries, budget);
    }
  }
}

}  // namespace

Int Factorization::value() const {
  Int v = 1;
  for (const auto& fe : entries) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), fe.prime.get_mpz_t(), fe.exponent);
    v *= pe;
  }
  return v;
}

unsigned Factorization::exponent_of(const Int& p) const {
  for (const auto& fe : entries)
    if (fe.prime == p) return fe.exponent;
  return 0;
}

Int Factorization::radical() const {
  Int r = 1;
  for (const auto& fe : entries) r *= fe.prime;
  return r;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (mpz_cmp_ui(n.get_mpz_t(), p) == 0) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Int n_minus_1 = n - 1;
  unsigned s = static_cast<unsigned>(mpz_scan1(n_minus_1.get_mpz_t(), 0));
  Int d = n_minus_1 >> s;
  // {2..37} is a deterministic witness set for n < 3.3*10^24 (covers 2^64)
  for (std::uint64_t b : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!miller_rabin_round(n, n_minus_1, d, s, Int(b))) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true;
  // 24 extra bases derived from n itself: deterministic across runs,
  // composite escape probability < 4^-36
  std::uint64_t state = mpz_get_ui(n.get_mpz_t()) ^ 0xa076'1d64'78bd'642fULL;
  for (int i = 0; i < 24; ++i) {
    Int base = Int(splitmix64(state)) % (n - 3) + 2;
    if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

std::size_t FactorCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::unique_lock lock(mutex_);
  std::size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) continue;
    Factorization f;
    Int n = parse_int(cell);
    bool ok = true;
    while (std::getline(ss, cell, ',')) {
      auto caret = cell.find('^');
      if (caret == std::string::npos) {
        ok = false;
        break;
      }
      f.entries.push_back({parse_int(cell.substr(0, caret)),
                           static_cast<unsigned>(std::stoul(cell.substr(caret + 1)))});
    }
    if (ok && f.value() == n) {
      entries_[n] = std::move(f);
      ++count;
    }
  }
  return count;
}

void FactorCache::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write factor cache: " + path);
  std::shared_lock lock(mutex_);
  for (const auto& [n, f] : entries_) {
    out << n.get_str();
    for (const auto& fe : f.entries)
      out << ',' << fe.prime.get_str() << '^' << fe.exponent;
    out << '\n';
  }
}

std::optional<Factorization> FactorCache::find(const Int& n) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FactorCache::remember(const Int& n, const Factorization& f) {
  std::unique_lock lock(mutex_);
  entries_.emplace(n, f);
}

std::size_t FactorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

Factorization factorize(const Int& n, const FactorizeOptions& options) {
  if (n < 1) throw InvalidArgument("factorize: n must be >= 1, got " + n.get_str());
  if (n == 1) return {};
  if (options.cache) {
    if (auto hit = options.cache->find(n)) return *hit;
  }
  Budget budget{options.budget_ops, &n};
  Factorization f;
  try {
    factor_recursive(n, f.entries, budget);
  } catch (const BudgetExceeded&) {
    throw BudgetExceeded(n, options.budget_ops);
  }
  std::sort(f.entries.begin(), f.entries.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.prime < b.prime; });
  if (options.cache) options.cache->remember(n, f);
  return f;
}

PowerFreeDecomposition power_free_decompose(const Int& n, unsigned degree,
                                            const FactorizeOptions& options) {
  if (degree < 2 || !is_prime(Int(degree)))
    throw InvalidArgument("power_free_decompose: degree must be a prime >= 2");
  Factorization f = factorize(n, options);
  PowerFreeDecomposition out{1, 1, degree};
  for (const auto& fe : f.entries) {
    Int pe;
    if (unsigned q = fe.exponent / degree; q > 0) {
      mpz_pow_ui(pe.get_mpz_t(), fe.prime.get_mpz_t(), q);
      out.power_part *= pe;
    }
    if (unsigned r = fe.exponent % degree; r > 0) {
      mpz_pow_ui(pe.get_mpz_t(), fe.prime.get_mpz_t(), r);
      out.free_part *= pe;
    }
  }
  return out;
}

CrtPair crt(std::span<const CrtPair> pairs) {
  CrtPair acc{0, 1};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Int& m2 = pairs[i].modulus;
    if (m2 < 1) throw InvalidArgument("crt: modulus must be positive");
    Int r2 = pairs[i].residue % m2;
    if (r2 < 0) r2 += m2;
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.modulus.get_mpz_t(),
               m2.get_mpz_t());
    if (g != 1) {
      // locate the earlier input sharing a factor with pairs[i]
      for (std::size_t j = 0; j < i; ++j) {
        Int gj;
        mpz_gcd(gj.get_mpz_t(), pairs[j].modulus.get_mpz_t(), m2.get_mpz_t());
        if (gj != 1) throw NonCoprimeModuli(j, i, pairs[j].modulus, m2);
      }
      throw NonCoprimeModuli(0, i, acc.modulus, m2);
    }
    // x = acc.residue + acc.modulus * s * (r2 - acc.residue)  (mod lcm)
    Int combined_modulus = acc.modulus * m2;
    Int x = acc.residue + acc.modulus * (s * (r2 - acc.residue) % m2);
    x %= combined_modulus;
    if (x < 0) x += combined_modulus;
    acc = {x, combined_modulus};
  }
  return acc;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
  if (hi < 2 || hi <= lo) return;
  if (hi > 1'000'000'000'000ULL)
    throw InvalidArgument("prime enumeration beyond 10^12 is out of scope");
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
  while ((root + 1) * (root + 1) <= hi) ++root;
  // base primes up to sqrt(hi)
  std::vector<std::uint64_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(i);
      for (std::uint64_t m = i * i; m <= root; m += i) composite[m] = true;
    }
  }
  const std::uint64_t segment_size = 1 << 20;
  std::vector<bool> segment;
  std::uint64_t start = std::max<std::uint64_t>(lo + 1, 2);
  while (start <= hi) {
    std::uint64_t end = std::min(hi, start + segment_size - 1);
    segment.assign(end - start + 1, true);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t m = first; m <= end; m += p) segment[m - start] = false;
    }
    for (std::uint64_t i = start; i <= end; ++i) {
      if (i >= 2 && segment[i - start]) visit(i);
    }
    start = end + 1;
  }
}

std::vector<std::uint64_t> primes_in(
    std::uint64_t lo, std::uint64_t hi,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> residue_filter) {
  std::vector<std::uint64_t> out;
  if (residue_filter && residue_filter->second == 0)
    throw InvalidArgument("primes_in: filter modulus must be positive");
  for_each_prime(lo, hi, [&](std::uint64_t p) {
    if (!residue_filter ||
        p % residue_filter->second == residue_filter->first % residue_filter->second)
      out.push_back(p);
  });
  return out;
}

}  // namespace pf

#include "pf/lseries.hpp"

#include <ostream>

#include "pf/arith.hpp"

namespace pf {
namespace {

void require_odd_prime_l(unsigned l) {
  if (l < 3 || l % 2 == 0 || !is_prime(Int(l)))
    throw InvalidArgument("l must be an odd prime >= 3, got " + std::to_string(l));
}

void tally(LambdaTallies& t, LambdaClass c) {
  switch (c) {
    case LambdaClass::SplitComplete: ++t.split_complete; break;
    case LambdaClass::OneLinear: ++t.one_linear; break;
    case LambdaClass::NoLinear: ++t.no_linear; break;
    case LambdaClass::SkippedRamified: ++t.skipped_ramified; break;
  }
}

}  // namespace

const char* to_string(LambdaClass c) {
  switch (c) {
    case LambdaClass::SplitComplete: return "split-complete";
    case LambdaClass::OneLinear: return "one-linear";
    case LambdaClass::NoLinear: return "no-linear";
    case LambdaClass::SkippedRamified: return "skipped-ramified";
  }
  return "?";
}

LambdaValue lambda_coefficient(const Int& a, unsigned l, std::uint64_t p) {
  require_odd_prime_l(l);
  if (a < 1) throw InvalidArgument("lambda_coefficient: a must be positive");
  LambdaValue out;
  out.p = p;
  if (p == l || mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    out.cls = LambdaClass::SkippedRamified;
    out.value = 0;
    return out;
  }
  if ((p - 1) % l != 0) {
    // gcd(l, p-1) = 1: x -> x^l is a bijection on F_p, exactly one root
    out.cls = LambdaClass::OneLinear;
    out.value = 0;
    return out;
  }
  Int pz(p);
  Int t;
  Int e((p - 1) / l);
  Int am = a % pz;
  mpz_powm(t.get_mpz_t(), am.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
  if (t == 1) {
    out.cls = LambdaClass::SplitComplete;  // l roots
    out.value = static_cast<int>(l) - 1;
  } else {
    out.cls = LambdaClass::NoLinear;  // 0 roots
    out.value = -1;
  }
  return out;
}

EulerProxy log_l1_proxy_range(const Int& a, unsigned l, std::uint64_t lo,
                              std::uint64_t hi) {
  require_odd_prime_l(l);
  EulerProxy out;
  out.a = a;
  out.l = l;
  out.cutoff = hi;
  for_each_prime(lo, hi, [&](std::uint64_t p) {
    LambdaValue lv = lambda_coefficient(a, l, p);
    tally(out.tallies, lv.cls);
    if (lv.cls != LambdaClass::SkippedRamified)
      out.sum += static_cast<double>(lv.value) / static_cast<double>(p);
  });
  return out;
}

EulerProxy log_l1_proxy(const Int& a, unsigned l, std::uint64_t X) {
  return log_l1_proxy_range(a, l, 1, X);
}

SplitDensity split_density(const Int& a, unsigned l, std::uint64_t X) {
  require_odd_prime_l(l);
  SplitDensity out;
  for_each_prime(1, X, [&](std::uint64_t p) {
    LambdaValue lv = lambda_coefficient(a, l, p);
    if (lv.cls == LambdaClass::SkippedRamified) return;
    ++out.unramified_total;
    if ((p - 1) % l == 0) {
      ++out.primes_1_mod_l;
      if (lv.cls == LambdaClass::SplitComplete) ++out.split_complete;
    }
  });
  if (out.primes_1_mod_l < 100) {
    // extend the sieve to name the smallest sufficient cutoff
    std::uint64_t needed = out.primes_1_mod_l;
    std::uint64_t sufficient = X;
    std::uint64_t probe = std::max<std::uint64_t>(X, 2);
    while (needed < 100) {
      std::uint64_t next = probe * 2;
      for_each_prime(probe, next, [&](std::uint64_t p) {
        if (needed >= 100) return;
        if ((p - 1) % l == 0 && lambda_coefficient(a, l, p).cls !=
                                    LambdaClass::SkippedRamified) {
          ++needed;
          sufficient = p;
        }
      });
      probe = next;
    }
    throw InvalidArgument("split_density: X = " + std::to_string(X) +
                          " has too few primes 1 mod l; need X >= " +
                          std::to_string(sufficient));
  }
  out.fraction_among_1_mod_l = static_cast<double>(out.split_complete) /
                               static_cast<double>(out.primes_1_mod_l);
  out.fraction_overall = static_cast<double>(out.split_complete) /
                         static_cast<double>(out.unramified_total);
  out.expected_among_1_mod_l = 1.0 / l;
  out.expected_overall = 1.0 / (static_cast<double>(l) * (l - 1));
  return out;
}

double nonresidue_partial_sum(const Int& a, unsigned l, std::uint64_t X) {
  require_odd_prime_l(l);
  double sum = 0.0;
  for_each_prime(1, X, [&](std::uint64_t p) {
    if ((p - 1) % l == 0) return;
    LambdaValue lv = lambda_coefficient(a, l, p);
    if (lv.cls != LambdaClass::SkippedRamified)
      sum += static_cast<double>(lv.value) / static_cast<double>(p);
  });
  return sum;
}

void write_lambda_csv(std::ostream& os, const Int& a, unsigned l, std::uint64_t X) {
  os << "p,class,lambda,cumulative_sum\n";
  double cumulative = 0.0;
  for_each_prime(1, X, [&](std::uint64_t p) {
    LambdaValue lv = lambda_coefficient(a, l, p);
    os << p << ',' << to_string(lv.cls) << ',';
    if (lv.cls == LambdaClass::SkippedRamified) {
      os << "";
    } else {
      cumulative += static_cast<double>(lv.value) / static_cast<double>(p);
      os << lv.value;
    }
    os << ',' << cumulative << '\n';
  });
}

}  // namespace pf

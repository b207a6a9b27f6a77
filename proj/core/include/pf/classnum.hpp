#pragma once

#include <optional>

#include "pf/common.hpp"
#include "pf/lseries.hpp"
#include "pf/purefield.hpp"

namespace pf {

// Residue-formula constants for pure odd-prime-degree fields: one real
// embedding (r1 = 1), (l-1)/2 complex pairs, w = 2 roots of unity.
struct ResidueConstants {
  unsigned r1 = 1;
  unsigned r2 = 0;
  unsigned w = 2;
};

ResidueConstants residue_constants(unsigned l);

// hR estimate from the class number formula with L(1) replaced by
// exp(proxy.sum):  exp(sum) * w * sqrt(D) / (2^{r1} (2 pi)^{r2}).
// Valid up to the Euler-truncation factor; monotone in proxy.sum.
double hr_from_proxy(const PureField& field, const EulerProxy& proxy);

// hR estimate divided by the rank-1 regulator estimate. A lower-bound
// estimate for h when the Stender unit is non-fundamental (R_hat >= R),
// up to the proxy's multiplicative uncertainty. l = 3 only.
double h_estimate_l3(const PureField& field, const EulerProxy& proxy,
                     double regulator_estimate);

struct BoundRatios {
  double landau = 0.0;       // R_hat / (sqrt(D) (log D)^{l-1})
  double hypothesis1 = 0.0;  // R_hat / (sqrt(D) log log D)
};

// Requires D >= 16 so log log D is safely positive.
BoundRatios bound_ratios(const PureField& field, double regulator_estimate);

// h_est * log D / (sqrt(D) * log log D): the shape of the headline bound.
double size_ratio(const PureField& field, double h_estimate);

}  // namespace pf

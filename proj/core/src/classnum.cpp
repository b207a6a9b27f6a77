#include "pf/classnum.hpp"

#include <cmath>
#include <numbers>

#include "pf/real.hpp"

namespace pf {
namespace {

double sqrt_of(const Int& d) {
  ScopedPrecision scope(40);
  return boost::multiprecision::sqrt(to_real(d)).convert_to<double>();
}

double log_of(const Int& d) {
  ScopedPrecision scope(40);
  return log_int(d).convert_to<double>();
}

}  // namespace

ResidueConstants residue_constants(unsigned l) {
  if (l < 3 || l % 2 == 0)
    throw InvalidArgument("residue constants defined for odd prime degree only");
  return {1, (l - 1) / 2, 2};
}

double hr_from_proxy(const PureField& field, const EulerProxy& proxy) {
  if (proxy.a != field.radicand)
    throw InvalidArgument("proxy was computed for a = " + proxy.a.get_str() +
                          ", not the field radicand " + field.radicand.get_str());
  if (proxy.l != field.l) throw InvalidArgument("proxy degree mismatch");
  ResidueConstants c = residue_constants(field.l);
  double two_pi = 2.0 * std::numbers::pi;
  // exp(sum) * w * sqrt(D) / (2^{r1} (2 pi)^{r2})
  return std::exp(proxy.sum) * c.w * sqrt_of(field.discriminant) /
         (std::pow(2.0, c.r1) * std::pow(two_pi, c.r2));
}

double h_estimate_l3(const PureField& field, const EulerProxy& proxy,
                     double regulator_estimate) {
  if (field.l != 3)
    throw UnsupportedRank("h_estimate_l3 requires l = 3");
  if (!(regulator_estimate > 0.0))
    throw InvalidArgument("regulator estimate must be positive");
  return hr_from_proxy(field, proxy) / regulator_estimate;
}

BoundRatios bound_ratios(const PureField& field, double regulator_estimate) {
  if (field.discriminant < 16)
    throw InvalidArgument("bound_ratios needs D >= 16 (log log degeneracy)");
  if (!(regulator_estimate > 0.0))
    throw InvalidArgument("regulator estimate must be positive");
  double sqrt_d = sqrt_of(field.discriminant);
  double log_d = log_of(field.discriminant);
  BoundRatios out;
  out.landau = regulator_estimate / (sqrt_d * std::pow(log_d, field.l - 1));
  out.hypothesis1 = regulator_estimate / (sqrt_d * std::log(log_d));
  return out;
}

double size_ratio(const PureField& field, double h_estimate) {
  if (field.discriminant < 16)
    throw InvalidArgument("size_ratio needs D >= 16");
  double sqrt_d = sqrt_of(field.discriminant);
  double log_d = log_of(field.discriminant);
  return h_estimate * log_d / (sqrt_d * std::log(log_d));
}

}  // namespace pf

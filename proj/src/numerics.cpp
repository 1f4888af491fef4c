#include "multisink/numerics.hpp"

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace multisink {

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0 && relative_tolerance < 1.0))
    throw DomainError("quadrature relative_tolerance must lie in (0, 1)");
  if (!(absolute_floor >= 0.0 && absolute_floor < relative_tolerance))
    throw DomainError("quadrature absolute_floor must be nonnegative and below relative_tolerance");
  if (max_levels < 1 || max_levels > kMaxQuadratureLevels)
    throw DomainError("quadrature max_levels must lie in [1, " + std::to_string(kMaxQuadratureLevels) + "]");
}

void BracketedRootSpec::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
    throw DomainError("root bracket requires finite lower < upper");
  if (!(relative_tolerance >= 0.0) || !(absolute_tolerance >= 0.0))
    throw DomainError("root tolerances must be nonnegative");
  if (max_iterations < 1) throw DomainError("root max_iterations must be positive");
}

namespace {
using GammaPolicy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;
}

template <std::floating_point Real>
Real log_gamma_t(Real x) {
  if (!std::isfinite(x) || !(x > 0)) throw DomainError("log_gamma requires a finite positive argument");
  return boost::math::lgamma(x, GammaPolicy());
}

template double log_gamma_t<double>(double);
template long double log_gamma_t<long double>(long double);

double log_gamma(double x) { return log_gamma_t<double>(x); }

}  // namespace multisink

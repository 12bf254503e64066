#pragma once

#include <functional>
#include <vector>

namespace drchm {

struct QuadratureConfig {
    double rel_tolerance = 1e-8;
    int max_subdivisions = 15;  // adaptive depth / refinement levels
};

using Integrand = std::function<double(double)>;

// adaptive Gauss-Kronrod on [a,b]; a or b may be infinite
double integrate(const Integrand& f, double a, double b, const QuadratureConfig& q);
// same, split at interior breakpoints (kinks); points outside (a,b) are ignored
double integrate(const Integrand& f, double a, double b, std::vector<double> breaks,
                 const QuadratureConfig& q);
// double-exponential rule for integrable endpoint singularities on a finite interval
double integrate_singular(const Integrand& f, double a, double b, const QuadratureConfig& q);
// [a, inf)
double integrate_to_inf(const Integrand& f, double a, const QuadratureConfig& q);

}  // namespace drchm

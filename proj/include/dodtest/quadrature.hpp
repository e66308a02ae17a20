#ifndef DODTEST_QUADRATURE_HPP
#define DODTEST_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace dod {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(std::size_t order);

// Integral of f over [a,b] with a single Gauss-Legendre rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    std::size_t order = 64);

// Integral over [a,b] split into `panels` equal panels, GL rule per panel.
double gl_integrate_panels(const std::function<double(double)>& f, double a, double b,
                           std::size_t panels, std::size_t order = 32);

// Integral over (a,b) with geometrically shrinking panels toward both
// endpoints (for integrable endpoint singularities): `geo` panels per side
// shrinking by factor 1/2, plus `interior` uniform panels in the middle.
double gl_integrate_endpoint_refined(const std::function<double(double)>& f, double a, double b,
                                     std::size_t geo = 40, std::size_t interior = 64,
                                     std::size_t order = 32);

}  // namespace dod

#endif

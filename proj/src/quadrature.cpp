#include "dodtest/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dod {

namespace {

// Newton iteration on Legendre polynomials; standard Golub-Welsch-free
// construction, accurate to ~1e-15 for the orders used here.
GaussLegendre compute_gl(std::size_t order) {
    if (order < 1) {
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    }
    GaussLegendre rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double n = static_cast<double>(order);
    for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
        // Chebyshev-like initial guess
        double x = std::cos(3.141592653589793 * (static_cast<double>(i) + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                break;
            }
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

std::mutex g_cache_mutex;
std::map<std::size_t, GaussLegendre> g_cache;

}  // namespace

const GaussLegendre& gauss_legendre(std::size_t order) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(order);
    if (it == g_cache.end()) {
        it = g_cache.emplace(order, compute_gl(order)).first;
    }
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    std::size_t order) {
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

double gl_integrate_panels(const std::function<double(double)>& f, double a, double b,
                           std::size_t panels, std::size_t order) {
    if (panels < 1) {
        throw std::invalid_argument("gl_integrate_panels: need at least one panel");
    }
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        sum += gl_integrate(f, a + h * static_cast<double>(k),
                            a + h * static_cast<double>(k + 1), order);
    }
    return sum;
}

double gl_integrate_endpoint_refined(const std::function<double(double)>& f, double a, double b,
                                     std::size_t geo, std::size_t interior, std::size_t order) {
    // split [a,b] into [a, a+w], [a+w, b-w], [b-w, b] with w = (b-a)/4;
    // the end sections use panels halving toward the endpoint. The shrink is
    // floored so quadrature nodes keep a relative distance of ~1e-9 from the
    // endpoints, where transformed integrands lose all precision.
    const double w = 0.25 * (b - a);
    const double min_span = 1e-9 * (b - a);
    double sum = gl_integrate_panels(f, a + w, b - w, interior, order);
    double left = a + w, right = b - w;
    double span = w;
    for (std::size_t k = 0; k < geo && span > min_span; ++k) {
        span *= 0.5;
        sum += gl_integrate(f, a + span, left, order);
        sum += gl_integrate(f, right, b - span, order);
        left = a + span;
        right = b - span;
    }
    // innermost slivers: open rule on the remaining [a, a+span], [b-span, b]
    sum += gl_integrate(f, a, a + span, order);
    sum += gl_integrate(f, b - span, b, order);
    return sum;
}

}  // namespace dod

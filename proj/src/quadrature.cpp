#include "fpx/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "fpx/errors.hpp"

namespace fpx {

double integrate(const Integrand& fn, double a, double b, int panels) {
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("integrate: panel count must be even and >= 2");
    const double h = (b - a) / panels;
    auto probe = [&](double x) {
        double v = fn(x);
        if (!std::isfinite(v))
            throw NonFiniteIntegrand("integrate: non-finite integrand value");
        return v;
    };
    double odd = 0.0, even = 0.0;
    for (int k = 1; k < panels; k += 2) odd += probe(a + k * h);
    for (int k = 2; k < panels; k += 2) even += probe(a + k * h);
    return h / 3.0 * (probe(a) + probe(b) + 4.0 * odd + 2.0 * even);
}

double integrate_periodic(const Integrand& fn, int panels) {
    return integrate(fn, 0.0, 1.0, panels);
}

double integrate_to_tol(const Integrand& fn, double a, double b, double rel_tol,
                        int init_panels, int max_panels) {
    double prev = integrate(fn, a, b, init_panels);
    for (int panels = 2 * init_panels; panels <= max_panels; panels *= 2) {
        double cur = integrate(fn, a, b, panels);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace fpx

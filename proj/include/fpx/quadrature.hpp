#pragma once

#include <functional>

namespace fpx {

using Integrand = std::function<double(double)>;

/// Composite Simpson on [a,b] with an even panel count.
/// Throws NonFiniteIntegrand if fn produces a non-finite value.
double integrate(const Integrand& fn, double a, double b, int panels);

/// Composite Simpson on [0,1] (the periodic cell). Single-shot; callers that
/// need convergence double the panel count, or use integrate_to_tol.
double integrate_periodic(const Integrand& fn, int panels);

/// Doubles panels from init_panels until two successive Simpson estimates
/// agree within rel_tol (relative to the latest), capped at max_panels.
double integrate_to_tol(const Integrand& fn, double a, double b,
                        double rel_tol = 1e-11, int init_panels = 64,
                        int max_panels = 1 << 20);

} // namespace fpx

#include "fpx/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpx/errors.hpp"
#include "fpx/quadrature.hpp"

namespace fpx {

namespace {

constexpr double kOuterTol = 1e-11;
constexpr double kInnerTol = 1e-13;

} // namespace

const char* motif_name(MotifKind m) {
    switch (m) {
    case MotifKind::Edge: return "edge";
    case MotifKind::Cherry: return "cherry";
    case MotifKind::Path: return "path";
    case MotifKind::Triangle: return "triangle";
    case MotifKind::ThreeEdgePath: return "three_edge_path";
    case MotifKind::TrianglePlusEdge: return "triangle_plus_edge";
    }
    return "?";
}

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::RelativelySparse: return "relatively_sparse";
    case Regime::Intermediate: return "intermediate";
    case Regime::RelativelyDense: return "relatively_dense";
    }
    return "?";
}

Regime classify_regime(double nr3, RegimeThresholds t) {
    if (nr3 < t.sparse) return Regime::RelativelySparse;
    if (nr3 > t.dense) return Regime::RelativelyDense;
    return Regime::Intermediate;
}

double Prediction::mean_degree_at(double x) const {
    return 2.0 * static_cast<double>(n - 1) * r * density->eval(x);
}

Prediction expected_fn(const PeriodicDensity& d, std::size_t n, double r,
                       RegimeThresholds thresholds) {
    if (!(r > 0.0 && r <= 0.5))
        throw RadiusOutOfRange("expected_fn: radius must lie in (0, 0.5]");
    Prediction p;
    p.n = n;
    p.r = r;
    p.lambda = static_cast<double>(n) * r * r * r;
    p.regime = classify_regime(p.lambda, thresholds);
    p.fprime_sq_integral = integrate_to_tol(
        [&](double x) {
            double fp = d.deriv(x, 1);
            return fp * fp;
        },
        0.0, 1.0, kOuterTol);
    p.mean_fn = p.lambda / 3.0 * p.fprime_sq_integral + 0.25;
    p.density = std::make_shared<PeriodicDensity>(d);
    return p;
}

double tau_f(double kappa, double mu) {
    if (kappa < 0.0) throw std::invalid_argument("tau_f: kappa must be >= 0");
    if (kappa == 0.0) return 0.0;
    const double i0 = bessel_i0(kappa);
    const double twopi = 2.0 * std::numbers::pi;
    const double integral = integrate_to_tol(
        [&](double x) {
            const double th = twopi * x - mu;
            const double s = std::sin(th);
            return std::exp(2.0 * kappa * std::cos(th)) * s * s;
        },
        0.0, 1.0, 1e-12);
    return 4.0 * std::numbers::pi * std::numbers::pi * kappa * kappa /
           (3.0 * i0 * i0) * integral;
}

std::vector<TauRow> table1() {
    static const double kappas[] = {0.1, 0.5, 1.0, 5.0, 10.0};
    static const double mus[] = {0.1, 0.3, 0.5};
    std::vector<TauRow> rows;
    rows.reserve(15);
    for (double mu : mus)
        for (double k : kappas) rows.push_back({k, mu, tau_f(k, mu)});
    return rows;
}

double motif_prob_exact(const PeriodicDensity& d, double x, double r, MotifKind m) {
    if (!(r > 0.0 && r <= 0.1))
        throw RadiusOutOfRange("motif_prob_exact: radius must lie in (0, 0.1]");
    // All integrals run over the periodic extension, so the seam needs no
    // special cases.
    auto f = [&](double y) { return d.eval(y); };
    auto arc_mass = [&](double a, double b) {
        return integrate_to_tol(f, a, b, kInnerTol, 8);
    };
    auto edge_at = [&](double y) { return arc_mass(y - r, y + r); };

    switch (m) {
    case MotifKind::Edge:
        return edge_at(x);
    case MotifKind::Cherry: {
        const double e = edge_at(x);
        return e * e;
    }
    case MotifKind::Path:
        return integrate_to_tol([&](double y) { return f(y) * edge_at(y); },
                                x - r, x + r, kOuterTol, 16);
    case MotifKind::Triangle: {
        // X2 above / below the anchor; X3 confined to the overlap of the two
        // balls in each case.
        const double upper = integrate_to_tol(
            [&](double y) { return f(y) * arc_mass(y - r, x + r); }, x, x + r,
            kOuterTol, 16);
        const double lower = integrate_to_tol(
            [&](double y) { return f(y) * arc_mass(x - r, y + r); }, x - r, x,
            kOuterTol, 16);
        return upper + lower;
    }
    default:
        throw std::invalid_argument(
            "motif_prob_exact: only edge/cherry/path/triangle have quadrature form");
    }
}

double motif_prob_asymptotic(const PeriodicDensity& d, double x, double r,
                             MotifKind m) {
    const double f = d.eval(x);
    const double fp = d.deriv(x, 1);
    const double fpp = d.deriv(x, 2);
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
    switch (m) {
    case MotifKind::Edge:
        return 2.0 * r * f + fpp * r3 / 3.0;
    case MotifKind::Cherry:
        return 4.0 * r2 * f * f + 4.0 / 3.0 * r4 * f * fpp;
    case MotifKind::Path:
        return 4.0 * r2 * f * f + r4 / 3.0 * (4.0 * fp * fp + 6.0 * f * fpp);
    case MotifKind::Triangle:
        return 3.0 * r2 * f * f + 5.0 * r4 / 12.0 * (fp * fp + 2.0 * f * fpp);
    case MotifKind::ThreeEdgePath:
        return 8.0 * r3 * f * f * f;
    case MotifKind::TrianglePlusEdge:
        return 6.0 * r3 * f * f * f;
    }
    return 0.0; // unreachable
}

} // namespace fpx

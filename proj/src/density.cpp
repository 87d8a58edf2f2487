#include "fpx/density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fpx/errors.hpp"
#include "fpx/quadrature.hpp"

namespace fpx {

namespace {

constexpr int kCdfIntervals = 1 << 14; // 2^14+1 knot cumulative table
constexpr int kFloorProbes = 4096;
constexpr double kPositivityFloor = 1e-6;
constexpr double kMassTol = 1e-10;

double wrap01(double x) {
    double w = x - std::floor(x);
    return w < 1.0 ? w : 0.0; // floor rounding can land exactly on 1
}

// Second derivatives of the periodic cubic spline through (k/M, y_k):
// cyclic tridiagonal system solved with Sherman-Morrison over Thomas.
std::vector<double> periodic_spline_second_derivs(const std::vector<double>& y) {
    const std::size_t m = y.size();
    const double h = 1.0 / static_cast<double>(m);
    std::vector<double> rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double yl = y[(k + m - 1) % m], yc = y[k], yr = y[(k + 1) % m];
        rhs[k] = 6.0 * (yr - 2.0 * yc + yl) / (h * h);
    }
    // System: 1*m_{k-1} + 4*m_k + 1*m_{k+1} = rhs_k (cyclic).
    const double diag = 4.0, off = 1.0;
    std::vector<double> a(m, diag), u(m, 0.0), z1(m), z2(m);
    const double gamma = -diag;
    a[0] -= gamma;
    a[m - 1] -= off * off / gamma;
    u[0] = gamma;
    u[m - 1] = off;

    auto thomas = [&](const std::vector<double>& d) {
        std::vector<double> c(m), x(m);
        c[0] = off / a[0];
        x[0] = d[0] / a[0];
        for (std::size_t i = 1; i < m; ++i) {
            double denom = a[i] - off * c[i - 1];
            c[i] = off / denom;
            x[i] = (d[i] - off * x[i - 1]) / denom;
        }
        for (std::size_t i = m - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
        return x;
    };
    z1 = thomas(rhs);
    z2 = thomas(u);
    const double fact = (z1[0] + off * z1[m - 1] / gamma) /
                        (1.0 + z2[0] + off * z2[m - 1] / gamma);
    for (std::size_t i = 0; i < m; ++i) z1[i] -= fact * z2[i];
    return z1;
}

} // namespace

double bessel_i0(double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("bessel_i0: kappa must be >= 0");
    const double q = kappa * kappa / 4.0;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 1000; ++m) {
        term *= q / (static_cast<double>(m) * m);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

PeriodicDensity PeriodicDensity::uniform() {
    PeriodicDensity d;
    d.kind_ = DensityKind::Uniform;
    d.validate();
    return d;
}

PeriodicDensity PeriodicDensity::von_mises(double kappa, double mu) {
    if (kappa < 0.0) throw DensityError("von_mises: kappa must be >= 0");
    PeriodicDensity d;
    d.kind_ = DensityKind::VonMises;
    d.kappa_ = kappa;
    d.mu_ = mu;
    d.normalizer_ = bessel_i0(kappa);
    d.build_cdf_table();
    d.validate();
    return d;
}

PeriodicDensity PeriodicDensity::tabulated(std::vector<double> values) {
    if (values.size() < 8)
        throw DensityError("tabulated: need at least 8 grid values");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DensityError("tabulated: values must be finite and nonnegative");

    PeriodicDensity d;
    d.kind_ = DensityKind::Tabulated;
    d.values_ = std::move(values);
    d.spline_m_ = periodic_spline_second_derivs(d.values_);

    // Exact mass of the spline: sum_k [ h(y_k+y_{k+1})/2 - h^3(m_k+m_{k+1})/24 ].
    const std::size_t m = d.values_.size();
    const double h = 1.0 / static_cast<double>(m);
    double mass = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t kn = (k + 1) % m;
        mass += h * (d.values_[k] + d.values_[kn]) / 2.0 -
                h * h * h * (d.spline_m_[k] + d.spline_m_[kn]) / 24.0;
    }
    if (!(mass > 0.0)) throw DensityError("tabulated: nonpositive total mass");
    for (double& v : d.values_) v /= mass;
    for (double& v : d.spline_m_) v /= mass;
    d.normalizer_ = mass;

    // Central differences on the renormalized grid, periodic wrap.
    d.d1_.resize(m);
    d.d2_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double yl = d.values_[(k + m - 1) % m];
        const double yr = d.values_[(k + 1) % m];
        const double yc = d.values_[k];
        d.d1_[k] = (yr - yl) * static_cast<double>(m) / 2.0;
        d.d2_[k] = (yr - 2.0 * yc + yl) * static_cast<double>(m) * m;
    }

    d.build_cdf_table();
    d.validate();
    return d;
}

PeriodicDensity PeriodicDensity::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DensityError("from_csv: cannot open " + path);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x >> y)) {
            if (xs.empty()) continue; // header row
            throw DensityError("from_csv: malformed row: " + line);
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 8) throw DensityError("from_csv: too few rows");
    const std::size_t m = xs.size();
    const double h = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k)
        if (std::abs(xs[k] - static_cast<double>(k) * h) > 1e-9)
            throw DensityError("from_csv: grid must be equispaced k/M over [0,1)");
    return tabulated(std::move(ys));
}

double PeriodicDensity::eval(double x) const {
    const double w = wrap01(x);
    switch (kind_) {
    case DensityKind::Uniform:
        return 1.0;
    case DensityKind::VonMises:
        return std::exp(kappa_ * std::cos(2.0 * std::numbers::pi * w - mu_)) / normalizer_;
    case DensityKind::Tabulated: {
        const std::size_t m = values_.size();
        const double g = w * static_cast<double>(m);
        std::size_t k = std::min(static_cast<std::size_t>(g), m - 1);
        const double t = g - static_cast<double>(k);
        const std::size_t kn = (k + 1) % m;
        const double h = 1.0 / static_cast<double>(m);
        const double a = 1.0 - t;
        return a * values_[k] + t * values_[kn] +
               h * h / 6.0 *
                   ((a * a * a - a) * spline_m_[k] + (t * t * t - t) * spline_m_[kn]);
    }
    }
    return 0.0; // unreachable
}

double PeriodicDensity::deriv(double x, int order) const {
    if (order != 1 && order != 2)
        throw std::invalid_argument("deriv: order must be 1 or 2");
    const double w = wrap01(x);
    switch (kind_) {
    case DensityKind::Uniform:
        return 0.0;
    case DensityKind::VonMises: {
        const double theta = 2.0 * std::numbers::pi * w - mu_;
        const double f = std::exp(kappa_ * std::cos(theta)) / normalizer_;
        const double twopi = 2.0 * std::numbers::pi;
        if (order == 1) return -twopi * kappa_ * std::sin(theta) * f;
        return twopi * twopi * kappa_ *
               (kappa_ * std::sin(theta) * std::sin(theta) - std::cos(theta)) * f;
    }
    case DensityKind::Tabulated: {
        // linear interpolation of the knot central differences
        const std::size_t m = values_.size();
        const double g = w * static_cast<double>(m);
        std::size_t k = std::min(static_cast<std::size_t>(g), m - 1);
        const double t = g - static_cast<double>(k);
        const std::size_t kn = (k + 1) % m;
        const auto& tab = (order == 1) ? d1_ : d2_;
        return (1.0 - t) * tab[k] + t * tab[kn];
    }
    }
    return 0.0; // unreachable
}

void PeriodicDensity::build_cdf_table() {
    // The von Mises table is built in the phase-zero frame and draws are
    // shifted by mu/2pi afterwards, which makes sampling exactly equivariant
    // under simultaneous rotations of density and anchor. Tabulated densities
    // have no phase parameter and use the identity frame.
    if (kind_ == DensityKind::VonMises) {
        const double delta = mu_ / (2.0 * std::numbers::pi);
        phase_ = delta - std::floor(delta);
        if (phase_ >= 1.0) phase_ = 0.0;
    }
    const int n = kCdfIntervals;
    const double h = 1.0 / n;
    std::vector<double> f(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double x = static_cast<double>(k) * h;
        f[k] = kind_ == DensityKind::VonMises
                   ? std::exp(kappa_ * std::cos(2.0 * std::numbers::pi * x)) /
                         normalizer_
                   : eval(x);
    }

    cdf_.assign(n + 1, 0.0);
    for (int k = 0; k + 2 <= n; k += 2) {
        // odd knot: integral of the quadratic through (f_k, f_{k+1}, f_{k+2})
        // over the first half-panel
        cdf_[k + 1] = cdf_[k] + h / 12.0 * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]);
        cdf_[k + 2] = cdf_[k] + h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
    }
    const double total = cdf_[n];
    if (!(total > 0.0)) throw DensityError("density: nonpositive cumulative mass");
    for (double& c : cdf_) c /= total;
    cdf_[n] = 1.0;
    for (int k = 0; k < n; ++k)
        if (!(cdf_[k + 1] > cdf_[k]))
            throw DensityError("density: too rough for a monotone sampling table");

    if (phase_ != 0.0) {
        const double t = wrap01(-phase_) * kCdfIntervals;
        const std::size_t k = std::min(static_cast<std::size_t>(t),
                                       static_cast<std::size_t>(kCdfIntervals - 1));
        origin_ = cdf_[k] + (t - static_cast<double>(k)) * (cdf_[k + 1] - cdf_[k]);
    }
}

void PeriodicDensity::validate() {
    // unit mass
    const double mass =
        integrate_to_tol([this](double x) { return eval(x); }, 0.0, 1.0, 1e-12);
    if (std::abs(mass - 1.0) > kMassTol)
        throw DensityError("density: integral differs from 1 beyond 1e-10");
    // periodic seam
    const double one_minus = std::nextafter(1.0, 0.0);
    if (std::abs(eval(0.0) - eval(one_minus)) > 1e-10)
        throw DensityError("density: value discontinuity across the seam");
    if (std::abs(deriv(0.0, 1) - deriv(one_minus, 1)) > 1e-8)
        throw DensityError("density: derivative discontinuity across the seam");
    // bounded away from zero
    for (int k = 0; k < kFloorProbes; ++k) {
        const double x = static_cast<double>(k) / kFloorProbes;
        if (eval(x) < kPositivityFloor)
            throw DensityError("density: not bounded away from zero (floor 1e-6)");
    }
}

double PeriodicDensity::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (kind_ == DensityKind::Uniform) return x;
    auto table_at = [this](double t) {
        const double g = t * kCdfIntervals;
        const std::size_t k = std::min(static_cast<std::size_t>(g),
                                       static_cast<std::size_t>(kCdfIntervals - 1));
        const double frac = g - static_cast<double>(k);
        return cdf_[k] + frac * (cdf_[k + 1] - cdf_[k]);
    };
    if (phase_ == 0.0) return table_at(x);
    double v = (x >= phase_ ? table_at(x - phase_) : table_at(x - phase_ + 1.0)) -
               origin_;
    if (v < 0.0) v += 1.0;
    return v;
}

// Quantile of the base (phase-zero) table.
double PeriodicDensity::base_quantile(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
    k = (k == 0) ? 0 : k - 1;
    const double seg = cdf_[k + 1] - cdf_[k];
    const double t = (u - cdf_[k]) / seg;
    return (static_cast<double>(k) + t) / kCdfIntervals;
}

double PeriodicDensity::inverse_cdf(double p) const {
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("inverse_cdf: level must lie in [0,1)");
    if (kind_ == DensityKind::Uniform) return p;
    const double u = phase_ == 0.0 ? p : wrap01(p + origin_);
    double x = base_quantile(u) + phase_;
    if (x >= 1.0) x -= 1.0;
    if (x >= 1.0 || x < 0.0) x = 0.0;
    return x;
}

double PeriodicDensity::sample_point(double u) const {
    if (!(u >= 0.0 && u < 1.0))
        throw std::invalid_argument("sample_point: variate must lie in [0,1)");
    if (kind_ == DensityKind::Uniform) return u;
    double x = base_quantile(u) + phase_;
    if (x >= 1.0) x -= 1.0;
    if (x >= 1.0 || x < 0.0) x = 0.0;
    return x;
}

NodePositions PeriodicDensity::sample(std::size_t n, Rng& rng) const {
    std::vector<double> xs(n);
    if (kind_ == DensityKind::Uniform) {
        for (double& v : xs) v = uniform01(rng);
    } else {
        for (double& v : xs) v = sample_point(uniform01(rng));
    }
    return NodePositions(std::move(xs));
}

} // namespace fpx

#include "fpx/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fpx/errors.hpp"

namespace fpx {

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

double RadiusRule::radius_for(std::size_t n) const {
    switch (kind) {
    case RadiusRuleKind::Fixed:
        return r;
    case RadiusRuleKind::PowerLaw:
        return c * std::pow(static_cast<double>(n), -alpha);
    case RadiusRuleKind::Lambda:
        return std::cbrt(lambda / static_cast<double>(n));
    }
    return r;
}

PeriodicDensity DensitySpec::make() const {
    switch (kind) {
    case DensityKind::Uniform:
        return PeriodicDensity::uniform();
    case DensityKind::VonMises:
        return PeriodicDensity::von_mises(kappa, mu);
    case DensityKind::Tabulated:
        return PeriodicDensity::from_csv(csv_path);
    }
    return PeriodicDensity::uniform();
}

SimulateResult run_simulate(const PeriodicDensity& d, std::size_t n, double r,
                            std::uint64_t seed, RegimeThresholds thresholds) {
    if (!(r > 0.0 && r <= 0.5))
        throw RadiusOutOfRange("simulate: radius must lie in (0, 0.5]");
    SimulateResult out;
    out.n = n;
    out.r = r;
    out.seed = seed;
    Rng rng(seed);
    CircularRGG g = build_graph(d.sample(n, rng), r);
    out.paradox = friendship_paradox(g);
    out.f_n = out.paradox.f_n;
    out.n_isolated = out.paradox.n_isolated;
    const Prediction pred = expected_fn(d, n, r, thresholds);
    out.prediction = pred.mean_fn;
    out.nr3 = pred.lambda;
    out.fprime_sq_integral = pred.fprime_sq_integral;
    out.regime = pred.regime;
    out.positions = g.positions();
    out.degrees = g.degrees();
    return out;
}

ConvergenceReport run_convergence(const ExperimentGrid& grid, double slack) {
    if (grid.n_values.size() < 2)
        throw std::invalid_argument("converge: need at least 2 n values for a trend");
    if (grid.replications < 2)
        throw std::invalid_argument("converge: need at least 2 replications");

    ConvergenceReport report;
    const PeriodicDensity density = grid.density.make();

    // Validate the whole grid before any sampling happens.
    std::vector<double> radii;
    radii.reserve(grid.n_values.size());
    for (std::size_t n : grid.n_values) {
        const double r = grid.rule.radius_for(n);
        if (!(r > 0.0 && r <= 0.5))
            throw InfeasibleRadius("converge: radius rule yields r outside (0, 0.5]");
        if (static_cast<double>(n) * r < 1.0)
            report.warnings.push_back("n*r < 1 at n=" + std::to_string(n) +
                                      "; outside the nr -> infinity regime");
        radii.push_back(r);
    }

    for (std::size_t idx = 0; idx < grid.n_values.size(); ++idx) {
        const std::size_t n = grid.n_values[idx];
        const double r = radii[idx];
        const auto t0 = std::chrono::steady_clock::now();

        std::vector<double> fns(grid.replications);
        parallel_for(grid.replications, grid.workers, [&](std::size_t rep) {
            const std::uint64_t seed = replicate_seed(grid.master_seed, n, rep);
            Rng rng(seed);
            CircularRGG g = build_graph(density.sample(n, rng), r);
            fns[rep] = friendship_paradox(g).f_n;
        });

        double sum = 0.0;
        for (double v : fns) sum += v;
        const double mean = sum / static_cast<double>(fns.size());
        double ss = 0.0;
        for (double v : fns) ss += (v - mean) * (v - mean);
        const double stddev = std::sqrt(ss / static_cast<double>(fns.size() - 1));

        const Prediction pred = expected_fn(density, n, r, grid.thresholds);

        ConvergenceRow row;
        row.n = n;
        row.r = r;
        row.nr3 = pred.lambda;
        row.regime = pred.regime;
        row.fn_mean = mean;
        row.fn_std = stddev;
        row.prediction = pred.mean_fn;
        row.abs_err = std::abs(mean - pred.mean_fn);
        row.rel_err = row.abs_err / pred.mean_fn;
        row.replications = grid.replications;
        row.wall_time_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        report.rows.push_back(row);
    }

    // Trend verdict: relative error and coefficient of variation both
    // nonincreasing along n, within the slack factor.
    report.pass = true;
    for (std::size_t k = 0; k + 1 < report.rows.size(); ++k) {
        const auto& a = report.rows[k];
        const auto& b = report.rows[k + 1];
        const double cv_a = a.fn_std / a.fn_mean;
        const double cv_b = b.fn_std / b.fn_mean;
        if (b.rel_err > slack * a.rel_err || cv_b > slack * cv_a)
            report.pass = false;
    }
    return report;
}

} // namespace fpx

#include "cutbound/optimizer.hpp"

#include "cutbound/errors.hpp"
#include "cutbound/maxcut.hpp"
#include "cutbound/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace cutbound {

namespace {

std::vector<double> clipped(const std::vector<double>& x, const std::vector<Interval>& bounds) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = std::clamp(x[i], bounds[i].lo, bounds[i].hi);
    return y;
}

} // namespace

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                     const std::vector<Interval>& bounds,
                     const std::vector<double>& init, const NmOptions& opts) {
    const std::size_t dim = init.size();
    if (bounds.size() != dim) throw InvalidParamsError("bounds/init dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i)
        if (init[i] < bounds[i].lo || init[i] > bounds[i].hi)
            throw InvalidInitError("initial point outside bounds at coordinate " +
                                   std::to_string(i));

    long obj_calls = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++obj_calls;
        return objective(clipped(x, bounds));
    };

    // vertices with cached values, kept sorted best-first (maximizing)
    std::vector<std::vector<double>> pts(dim + 1, init);
    std::vector<double> vals(dim + 1);
    for (std::size_t i = 0; i < dim; ++i)
        pts[i + 1][i] += 0.05 * (bounds[i].hi - bounds[i].lo);
    for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(dim + 1);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        std::vector<std::vector<double>> p2(dim + 1);
        std::vector<double> v2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            p2[i] = std::move(pts[idx[i]]);
            v2[i] = vals[idx[i]];
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };
    order();

    const long max_iters = opts.max_iters > 0 ? opts.max_iters
                                              : 500 * static_cast<long>(dim);
    bool converged = false;
    for (long iter = 0; iter < max_iters && !converged; ++iter) {
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto along = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t j = 0; j < dim; ++j)
                x[j] = centroid[j] + t * (centroid[j] - pts[dim][j]);
            return x;
        };
        auto replace_worst = [&](std::vector<double> x, double v) {
            pts[dim] = std::move(x);
            vals[dim] = v;
            order();
        };

        auto reflected = along(1.0);
        double f_r = eval(reflected);
        if (f_r > vals[0]) {
            auto expanded = along(2.0);
            double f_e = eval(expanded);
            if (f_e > f_r)
                replace_worst(std::move(expanded), f_e);
            else
                replace_worst(std::move(reflected), f_r);
            continue;
        }
        if (f_r > vals[dim - 1]) {
            replace_worst(std::move(reflected), f_r);
            continue;
        }
        bool shrink = false;
        if (f_r > vals[dim]) {
            auto outside = along(0.5);
            double f_c = eval(outside);
            if (f_c >= f_r)
                replace_worst(std::move(outside), f_c);
            else
                shrink = true;
        } else {
            auto inside = along(-0.5);
            double f_c = eval(inside);
            if (f_c > vals[dim])
                replace_worst(std::move(inside), f_c);
            else
                shrink = true;
        }
        if (shrink) {
            for (std::size_t i = 1; i <= dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j)
                    pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                vals[i] = eval(pts[i]);
            }
            order();
        }
        converged = vals.front() - vals.back() < opts.tol;
    }

    NmResult result;
    result.point = clipped(pts[0], bounds);
    result.value = vals[0];
    result.obj_calls = obj_calls;
    result.converged = converged;
    return result;
}

OptResult optimize_qaoa(const Graph& g, int p, std::uint64_t seed,
                        const OptimizeOptions& opts) {
    if (p < 1) throw InvalidParamsError("depth must be at least 1");
    if (g.m() == 0) throw NoEdgesError("optimization needs at least one edge");

    const double pi = std::numbers::pi;
    std::vector<Interval> bounds(2 * p);
    for (int i = 0; i < p; ++i) bounds[i] = {0.0, pi};
    for (int i = p; i < 2 * p; ++i) bounds[i] = {0.0, pi / 2};

    Evaluator evaluator(g);
    auto objective = [&](const std::vector<double>& x) {
        QaoaParams params;
        params.gamma.assign(x.begin(), x.begin() + p);
        params.beta.assign(x.begin() + p, x.end());
        return evaluator.expectation(params);
    };

    NmOptions nm_opts;
    nm_opts.tol = opts.tol;
    nm_opts.max_iters = opts.max_iters > 0 ? opts.max_iters : 500L * 2 * p;

    OptResult best;
    best.seed = seed;
    best.value = -1.0;
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<double> init(2 * p);
        for (int i = 0; i < 2 * p; ++i)
            init[i] = bounds[i].lo + rng.unit() * (bounds[i].hi - bounds[i].lo);
        NmResult nm = nelder_mead(objective, bounds, init, nm_opts);
        best.obj_calls += nm.obj_calls;
        if (nm.value > best.value) {
            best.value = nm.value;
            best.params.gamma.assign(nm.point.begin(), nm.point.begin() + p);
            best.params.beta.assign(nm.point.begin() + p, nm.point.end());
            best.converged = nm.converged;
        }
    }

    best.maxcut = maxcut_bruteforce(g).value;
    best.ratio = best.value / best.maxcut;
    return best;
}

} // namespace cutbound

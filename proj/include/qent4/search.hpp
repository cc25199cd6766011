// search.hpp
// Multistart derivative-free optimization of the average 2+2 cut entropy
// over the parametrized state families, plus the Renyi crossover root and
// the maximally-entangled-class minimum scan.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qent4/entanglement.hpp"
#include "qent4/states.hpp"
#include "qent4/threading.hpp"

namespace qent4 {

namespace detail {

constexpr double infeasible_penalty = 1e100;

// Nelder-Mead with standard coefficients (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5), minimizing. Stops when the simplex
// diameter falls below tol. Deterministic.
template <typename F>
inline std::pair<std::vector<double>, double> nelder_mead(F&& f, std::vector<double> x0,
                                                          double step, int max_iters,
                                                          double tol) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) value[i] = f(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;

    for (int iter = 0; iter < max_iters; ++iter) {
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        double diam = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                diam = std::max(diam, std::abs(simplex[order[i]][d] - simplex[best][d]));
        if (diam < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
            return x;
        };

        const std::vector<double> xr = blend(-1.0);
        const double fr = f(xr);
        if (fr < value[best]) {
            const std::vector<double> xe = blend(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                value[worst] = fe;
            } else {
                simplex[worst] = xr;
                value[worst] = fr;
            }
            continue;
        }
        if (fr < value[second]) {
            simplex[worst] = xr;
            value[worst] = fr;
            continue;
        }
        const bool outside = fr < value[worst];
        const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
        const double fc = f(xc);
        if (fc < (outside ? fr : value[worst])) {
            simplex[worst] = xc;
            value[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d)
                simplex[i][d] = 0.5 * (simplex[i][d] + simplex[best][d]);
            value[i] = f(simplex[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (value[i] < value[best]) best = i;
    return {simplex[best], value[best]};
}

}  // namespace detail

enum class search_family { class_a, class_m, eq_last_theta };
enum class search_direction { maximize, minimize };

struct search_config {
    search_family family = search_family::class_a;
    entropy_measure objective{entropy_family::tsallis, 3.0};
    search_direction direction = search_direction::maximize;
    int restarts = 64;
    int max_iters = 4000;
    std::uint64_t seed = 0;
    double tolerance = 1e-12;  // simplex diameter stop
};

struct search_result {
    double best_value = 0.0;
    pure_state4 best_state;
    std::vector<double> best_params;
    std::vector<double> trace;  // best value of each restart
};

namespace detail {

// class_m continuous coordinates (q0..q3, theta0, theta1) plus frozen
// discrete choices: which polygon branch closes the phase constraint and
// whether theta2 / theta3 carry an extra pi.
struct class_m_chart {
    double branch = 1.0;
    bool flip2 = false;
    bool flip3 = false;

    // returns false when the triangle inequality rules the move out
    bool params_to_state(const std::vector<double>& x, pure_state4& out) const {
        std::array<double, 4> p;
        double qsum = 0.0;
        for (int j = 0; j < 4; ++j) qsum += x[j] * x[j];
        if (qsum < 1e-14) return false;
        for (int j = 0; j < 4; ++j) p[j] = x[j] * x[j] / qsum;

        const cplx w = -(p[0] * std::polar(1.0, 2.0 * x[4]) + p[1] * std::polar(1.0, 2.0 * x[5]));
        const double d = std::abs(w);
        if (d > p[2] + p[3] || d < std::abs(p[2] - p[3]) || d < 1e-14) return false;

        double cosb = 1.0;
        if (p[2] > 1e-300) cosb = (p[2] * p[2] + d * d - p[3] * p[3]) / (2.0 * p[2] * d);
        const double beta = std::acos(std::clamp(cosb, -1.0, 1.0));
        const double phi2 = std::arg(w) + branch * beta;
        const cplx rest = w - p[2] * std::polar(1.0, phi2);
        const double phi3 = std::abs(rest) > 1e-300 ? std::arg(rest) : 0.0;

        class_m_params mp;
        mp.p = p;
        mp.theta = {x[4], x[5], phi2 / 2 + (flip2 ? std::numbers::pi : 0.0),
                    phi3 / 2 + (flip3 ? std::numbers::pi : 0.0)};
        out = from_class_m(mp);
        return true;
    }

    // chart coordinates reproducing a sampled member, with the discrete
    // choices detected from its phases
    std::vector<double> from_sample(const class_m_params& mp) {
        std::vector<double> x(6);
        for (int j = 0; j < 4; ++j) x[j] = std::sqrt(mp.p[j]);
        x[4] = mp.theta[0];
        x[5] = mp.theta[1];

        const cplx w =
            -(mp.p[0] * std::polar(1.0, 2.0 * mp.theta[0]) + mp.p[1] * std::polar(1.0, 2.0 * mp.theta[1]));
        const double d = std::abs(w);
        double cosb = 1.0;
        if (mp.p[2] > 1e-300 && d > 1e-300)
            cosb = (mp.p[2] * mp.p[2] + d * d - mp.p[3] * mp.p[3]) / (2.0 * mp.p[2] * d);
        const double beta = std::acos(std::clamp(cosb, -1.0, 1.0));
        const cplx target2 = std::polar(1.0, 2.0 * mp.theta[2]);
        branch = std::abs(std::polar(1.0, std::arg(w) + beta) - target2) <=
                         std::abs(std::polar(1.0, std::arg(w) - beta) - target2)
                     ? 1.0
                     : -1.0;
        const double phi2 = std::arg(w) + branch * beta;
        const cplx rest = w - mp.p[2] * std::polar(1.0, phi2);
        const double phi3 = std::abs(rest) > 1e-300 ? std::arg(rest) : 0.0;
        flip2 = std::abs(std::polar(1.0, phi2 / 2) - std::polar(1.0, mp.theta[2])) > 1.0;
        flip3 = std::abs(std::polar(1.0, phi3 / 2) - std::polar(1.0, mp.theta[3])) > 1.0;
        return x;
    }
};

struct family_objective {
    search_family family;
    entropy_measure measure;
    double sign;  // -1 when maximizing (the solver minimizes)
    class_m_chart chart;

    bool to_state(const std::vector<double>& x, pure_state4& out) const {
        switch (family) {
            case search_family::class_a: {
                magic_coeffs z;
                double n = 0.0;
                for (int j = 0; j < 4; ++j) {
                    z.z[j] = {x[2 * j], x[2 * j + 1]};
                    n += std::norm(z.z[j]);
                }
                if (n < 1e-14) return false;
                n = std::sqrt(n);
                for (auto& v : z.z) v /= n;
                out = from_magic(z);
                return true;
            }
            case search_family::class_m:
                return chart.params_to_state(x, out);
            case search_family::eq_last_theta:
                out = eq_last_state(x[0]);
                return true;
        }
        return false;
    }

    double operator()(const std::vector<double>& x) const {
        pure_state4 s;
        if (!to_state(x, s)) return infeasible_penalty;
        return sign * avg_entropy_E2(s, measure);
    }
};

}  // namespace detail

inline void validate_search_config(const search_config& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("search: restarts must be >= 1");
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("search: tolerance must be > 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("search: max_iters must be >= 1");
    if (cfg.objective.family != entropy_family::von_neumann && !(cfg.objective.alpha > 0.0))
        throw std::invalid_argument("search: alpha must be positive");
}

/// Multistart Nelder-Mead over the configured family. Restart r draws its
/// starting point from an rng seeded with seed + r; restarts run in
/// parallel and reduce by associative max, so a fixed config gives a
/// bit-identical result. Every local run is followed by two re-inflation
/// polish runs, which pushes the argmax well below the f-vector
/// comparison tolerances used downstream.
inline search_result optimize_E2(const search_config& cfg) {
    validate_search_config(cfg);
    const double sign = cfg.direction == search_direction::maximize ? -1.0 : 1.0;

    struct restart_out {
        double value = detail::infeasible_penalty;
        std::vector<double> params;
        detail::class_m_chart chart;
    };
    std::vector<restart_out> outs(cfg.restarts);

    parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t r) {
        std::mt19937_64 rng(cfg.seed + r);
        detail::family_objective obj{cfg.family, cfg.objective, sign, {}};

        std::vector<double> x0;
        double step = 0.25;
        switch (cfg.family) {
            case search_family::class_a:
                x0.resize(8);
                for (double& v : x0) v = detail::gaussian(rng);
                break;
            case search_family::class_m: {
                auto [st, mp] = sample_class_M(rng);
                (void)st;
                x0 = obj.chart.from_sample(mp);
                step = 0.15;
                break;
            }
            case search_family::eq_last_theta:
                x0 = {detail::uniform(rng, 0.0, 2.0 * std::numbers::pi)};
                step = 0.5;
                break;
        }

        auto [x1, v1] = detail::nelder_mead(obj, x0, step, cfg.max_iters, cfg.tolerance);
        auto [x2, v2] = detail::nelder_mead(obj, x1, 1e-4, cfg.max_iters / 2 + 1, cfg.tolerance);
        auto [x3, v3] = detail::nelder_mead(obj, x2, 1e-7, cfg.max_iters / 2 + 1, cfg.tolerance);
        outs[r].value = std::min({v1, v2, v3});
        outs[r].params = v3 <= std::min(v1, v2) ? x3 : (v2 <= v1 ? x2 : x1);
        outs[r].chart = obj.chart;
    });

    int best = 0;
    for (int r = 1; r < cfg.restarts; ++r)
        if (outs[r].value < outs[best].value) best = r;
    if (outs[best].value >= detail::infeasible_penalty)
        throw std::runtime_error("optimize_E2: no feasible point found");

    search_result res;
    res.best_params = outs[best].params;
    detail::family_objective obj{cfg.family, cfg.objective, sign, outs[best].chart};
    pure_state4 s;
    obj.to_state(res.best_params, s);
    res.best_state = s.normalized();
    res.best_value = avg_entropy_E2(res.best_state, cfg.objective);
    res.trace.reserve(cfg.restarts);
    for (const auto& o : outs) res.trace.push_back(sign * o.value);
    return res;
}

/// Bisection root of g(alpha) = E2_Renyi(|M>, alpha) - 5/3 inside [lo, hi],
/// located to 1e-6. This is the alpha at which the average Renyi entropy
/// of |M> crosses the constant cluster value.
inline double crossover_alpha(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("crossover_alpha: need lo < hi");
    const pure_state4 m = named_state(state_name::m);
    auto g = [&](double alpha) {
        return avg_entropy_E2(m, {entropy_family::renyi, alpha}) - 5.0 / 3.0;
    };
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0))
        throw std::invalid_argument("crossover_alpha: no sign change in bracket");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Minimum of the average cut entropy over the maximally entangled class:
/// Monte-Carlo scan plus Nelder-Mead refinement from the best sample.
inline std::pair<double, pure_state4> scan_M_for_minima(entropy_measure objective, int samples,
                                                        std::mt19937_64& rng) {
    if (objective.family == entropy_family::von_neumann || std::abs(objective.alpha - 1.0) < 1e-6)
        throw std::invalid_argument("scan_M_for_minima: declare an alpha != 1 regime");
    if (samples < 1) throw std::invalid_argument("scan_M_for_minima: samples must be >= 1");

    double best_value = std::numeric_limits<double>::infinity();
    class_m_params best_params;
    pure_state4 best_state;
    for (int i = 0; i < samples; ++i) {
        auto [s, mp] = sample_class_M(rng);
        const double v = avg_entropy_E2(s, objective);
        if (v < best_value) {
            best_value = v;
            best_params = mp;
            best_state = s;
        }
    }

    detail::family_objective obj{search_family::class_m, objective, 1.0, {}};
    std::vector<double> x0 = obj.chart.from_sample(best_params);
    auto [x1, v1] = detail::nelder_mead(obj, x0, 0.1, 4000, 1e-12);
    auto [x2, v2] = detail::nelder_mead(obj, x1, 1e-5, 2000, 1e-13);
    if (std::min(v1, v2) < best_value) {
        const auto& xbest = v2 <= v1 ? x2 : x1;
        pure_state4 s;
        if (obj.to_state(xbest, s)) {
            best_state = s.normalized();
            best_value = avg_entropy_E2(best_state, objective);
        }
    }
    return {best_value, best_state};
}

}  // namespace qent4

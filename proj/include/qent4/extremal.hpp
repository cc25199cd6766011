// extremal.hpp
// Closed-form extremal spectra at fixed tangle, the piecewise Tsallis
// bounds built from them, the three-cut bound functions whose landscape
// peaks at (4/3, 4/3, 4/3), and the auxiliary slope functions behind the
// landscape lemmas.

#pragma once

#include <cmath>
#include <stdexcept>

#include "qent4/entanglement.hpp"

namespace qent4 {

namespace detail {

inline void check_tau_range(double tau, double lo, double hi, const char* where) {
    if (!(tau >= lo - 1e-12 && tau <= hi + 1e-12))
        throw std::out_of_range(std::string(where) + ": tangle out of range");
}

inline double x_of_tau(double tau) { return std::sqrt(std::max(0.0, 1.0 - 2.0 * tau / 3.0)); }
inline double y_of_tau(double tau) { return std::sqrt(std::max(0.0, 1.0 - 3.0 * tau / 4.0)); }

}  // namespace detail

// {(1+3x)/4, (1-x)/4, (1-x)/4, (1-x)/4} with x = sqrt(1 - 2 tau / 3).
// Maximizes Tsallis/Renyi entropy at fixed tangle for 0 < alpha < 2,
// minimizes it for alpha > 2.
inline spectrum4 spectrum_lm1(double tau) {
    detail::check_tau_range(tau, 0.0, 1.5, "spectrum_lm1");
    const double x = detail::x_of_tau(tau);
    const double tail = std::max(0.0, (1.0 - x) / 4.0);
    return {(1.0 + 3.0 * x) / 4.0, tail, tail, tail};
}

// The opposite extremum, three branches meeting continuously at tau = 1
// and tau = 4/3.
inline spectrum4 spectrum_L1(double tau) {
    detail::check_tau_range(tau, 0.0, 1.5, "spectrum_L1");
    if (tau >= 4.0 / 3.0) {
        const double x = detail::x_of_tau(tau);
        return {(1.0 + x) / 4.0, (1.0 + x) / 4.0, (1.0 + x) / 4.0,
                std::max(0.0, (1.0 - 3.0 * x) / 4.0)};
    }
    if (tau >= 1.0) {
        const double y = detail::y_of_tau(tau);
        return {(1.0 + y) / 3.0, (1.0 + y) / 3.0, std::max(0.0, (1.0 - 2.0 * y) / 3.0), 0.0};
    }
    const double r = std::sqrt(std::max(0.0, 1.0 - tau));
    return {(1.0 + r) / 2.0, (1.0 - r) / 2.0, 0.0, 0.0};
}

/// Piecewise Tsallis bound at fixed tangle t in [1, 3/2]: the maximum for
/// alpha > 2 and the minimum for 0 < alpha < 2, both attained by the
/// spectrum_L1 distribution.
inline double e_tilde_max(double alpha, double t) {
    if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12)
        throw std::invalid_argument("e_tilde_max: alpha must be positive and != 1");
    detail::check_tau_range(t, 1.0, 1.5, "e_tilde_max");
    const double inv = 1.0 / (alpha - 1.0);
    if (t >= 4.0 / 3.0) {
        const double x = detail::x_of_tau(t);
        return inv * (1.0 - 3.0 * std::pow((1.0 + x) / 4.0, alpha) -
                      std::pow(std::max(0.0, (1.0 - 3.0 * x) / 4.0), alpha));
    }
    const double y = detail::y_of_tau(t);
    return inv * (1.0 - 2.0 * std::pow((1.0 + y) / 3.0, alpha) -
                  std::pow(std::max(0.0, (1.0 - 2.0 * y) / 3.0), alpha));
}

/// Constrained Tsallis maximum for 0 < alpha < 2 at fixed tangle t and
/// Schmidt-coefficient cap p_j <= (1+a)/2. Above the crossover
/// t = 2(1-a)(2+a)/3 the cap is slack and the bound is the spectrum_lm1
/// value; below it the cap binds and the top coefficient pins to (1+a)/2,
/// with omega = sqrt(4 - 2a - 2a^2 - 3t).  Feasible for t >= 1 - a^2.
inline double e_tilde_max_constrained(double alpha, double a, double t) {
    if (!(alpha > 0.0 && alpha < 2.0) || std::abs(alpha - 1.0) < 1e-12)
        throw std::invalid_argument("e_tilde_max_constrained: alpha must be in (0,2), != 1");
    if (!(a >= 0.0 && a <= 1.0))
        throw std::invalid_argument("e_tilde_max_constrained: a must be in [0,1]");
    if (!(t >= 1.0 - a * a - 1e-12 && t <= 1.5 + 1e-12))
        throw std::invalid_argument("e_tilde_max_constrained: infeasible (a, t)");
    const double inv = 1.0 / (alpha - 1.0);
    const double crossover = 2.0 * (1.0 - a) * (2.0 + a) / 3.0;
    if (t >= crossover) {
        const double x = detail::x_of_tau(t);
        return inv * (1.0 - 3.0 * std::pow(std::max(0.0, (1.0 - x) / 4.0), alpha) -
                      std::pow((1.0 + 3.0 * x) / 4.0, alpha));
    }
    const double omega = std::sqrt(std::max(0.0, 4.0 - 2.0 * a - 2.0 * a * a - 3.0 * t));
    return inv * (1.0 - std::pow((1.0 + a) / 2.0, alpha) -
                  std::pow((1.0 - a + 2.0 * omega) / 6.0, alpha) -
                  2.0 * std::pow(std::max(0.0, (1.0 - a - omega) / 6.0), alpha));
}

// Mean of the per-cut bound over three tangles. One closed form serves
// both regimes: it is the upper bound of the cut average for alpha > 2
// and the lower bound for 0 < alpha < 2 (the caller declares the regime
// by choosing f_max or f_min).
inline double f_max(double alpha, double t1, double t2, double t3) {
    return (e_tilde_max(alpha, t1) + e_tilde_max(alpha, t2) + e_tilde_max(alpha, t3)) / 3.0;
}

inline double f_min(double alpha, double t1, double t2, double t3) {
    return f_max(alpha, t1, t2, t3);
}

/// Slope-test auxiliaries of the landscape analysis:
///   v_a(x) = a/((a-1) 4^{a-1}) (1/x) [(1+x)^{a-1} - (1-3x)^{a-1}]
///   u_a(y) = a/((a-1) 3^{a-1}) (1/y) [(1+y)^{a-1} - (1-2y)^{a-1}]
/// with the removable singularities at 0 evaluated by a second-order
/// series below 1e-5 (v(0) = a/4^{a-2}, u(0) = a/3^{a-2}).
inline double v_alpha(double alpha, double x) {
    if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12)
        throw std::invalid_argument("v_alpha: alpha must be positive and != 1");
    if (!(x >= 0.0 && x <= 1.0 / 3.0 + 1e-12))
        throw std::out_of_range("v_alpha: x must be in [0, 1/3]");
    const double b = alpha - 1.0;
    if (x < 1e-5) {
        return alpha / std::pow(4.0, alpha - 2.0) *
               (1.0 - (b - 1.0) * x + 7.0 / 6.0 * (b - 1.0) * (b - 2.0) * x * x);
    }
    return alpha / (b * std::pow(4.0, b)) / x *
           (std::pow(1.0 + x, b) - std::pow(std::max(0.0, 1.0 - 3.0 * x), b));
}

inline double u_alpha(double alpha, double y) {
    if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12)
        throw std::invalid_argument("u_alpha: alpha must be positive and != 1");
    if (!(y >= 0.0 && y <= 0.5 + 1e-12))
        throw std::out_of_range("u_alpha: y must be in [0, 1/2]");
    const double b = alpha - 1.0;
    if (y < 1e-5) {
        return alpha / std::pow(3.0, alpha - 2.0) *
               (1.0 - 0.5 * (b - 1.0) * y + 0.5 * (b - 1.0) * (b - 2.0) * y * y);
    }
    return alpha / (b * std::pow(3.0, b)) / y *
           (std::pow(1.0 + y, b) - std::pow(std::max(0.0, 1.0 - 2.0 * y), b));
}

// f(t1, t2) = (1 - t1/2)(1 - t2/2)((t1 + t2)/2 - 1) on the cluster-bound
// domain D = {1 <= t1 <= 3/2, 5/2 - t1 <= t2 <= 3/2}; its minimum 1/32 is
// attained only at (1, 3/2), (3/2, 1), (3/2, 3/2).
inline double cluster_bound_f(double t1, double t2) {
    if (!(t1 >= 1.0 - 1e-12 && t1 <= 1.5 + 1e-12 && t2 >= 2.5 - t1 - 1e-12 &&
          t2 <= 1.5 + 1e-12))
        throw std::out_of_range("cluster_bound_f: (t1, t2) outside the domain D");
    return (1.0 - 0.5 * t1) * (1.0 - 0.5 * t2) * (0.5 * (t1 + t2) - 1.0);
}

}  // namespace qent4

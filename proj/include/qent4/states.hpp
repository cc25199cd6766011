// states.hpp
// Four-qubit pure states, the magic (Bell x Bell) basis, named states from
// the literature, family samplers, and local / permutation group actions.
//
// Amplitude index convention, fixed here and used everywhere:
//   amp[i] with i = 8a + 4b + 2c + d  for the basis ket |abcd> on qubits
//   (A,B,C,D). Qubit A is the most significant bit.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "qent4/linalg.hpp"

namespace qent4 {

struct pure_state4 {
    std::array<cplx, 16> amp{};

    double norm_sq() const {
        double n = 0.0;
        for (const cplx& v : amp) n += std::norm(v);
        return n;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    pure_state4 normalized() const {
        pure_state4 s = *this;
        const double n = norm();
        if (n > 0.0)
            for (cplx& v : s.amp) v /= n;
        return s;
    }
};

constexpr int basis_index(int a, int b, int c, int d) { return 8 * a + 4 * b + 2 * c + d; }

// <a|b>
inline cplx inner(const pure_state4& a, const pure_state4& b) {
    cplx r = 0.0;
    for (int i = 0; i < 16; ++i) r += std::conj(a.amp[i]) * b.amp[i];
    return r;
}

inline double max_abs_state_diff(const pure_state4& a, const pure_state4& b) {
    double d = 0.0;
    for (int i = 0; i < 16; ++i) d = std::max(d, std::abs(a.amp[i] - b.amp[i]));
    return d;
}

inline void check_normalized(const pure_state4& s, const char* where) {
    if (std::abs(s.norm_sq() - 1.0) > 1e-10)
        throw std::invalid_argument(std::string(where) + ": state is not normalized");
}

struct magic_coeffs {
    std::array<cplx, 4> z{};
};

// Class M coordinates: z_j = sqrt(p_j) e^{i theta_j} with sum p_j = 1 and
// sum p_j e^{2 i theta_j} = 0.
struct class_m_params {
    std::array<double, 4> p{};
    std::array<double, 4> theta{};
};

enum class local_kind { unitary, special_linear };

struct local_operator {
    std::array<cmat2, 4> factor;
    local_kind kind = local_kind::unitary;
};

using qubit_perm = std::array<int, 4>;

namespace detail {

// uniform double in [0,1), 53 random bits
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// standard normal via Box-Muller (two fresh uniforms per draw, keeps the
// stream splittable and bit-reproducible across platforms)
inline double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

// u_0 = phi+ phi+, u_1 = phi- phi-, u_2 = psi+ psi+, u_3 = psi- psi-,
// Bell pairs living on (A,B) and (C,D). Every amplitude is exactly +-1/2,
// so the expansions are spelled out instead of computed from tensor
// factors (keeps them bit-exact).
inline pure_state4 magic_basis_vector(int j) {
    // support and signs over the index convention 8a+4b+2c+d
    static constexpr std::array<std::array<int, 4>, 4> support{
        {{0, 3, 12, 15}, {0, 3, 12, 15}, {5, 6, 9, 10}, {5, 6, 9, 10}}};
    static constexpr std::array<std::array<double, 4>, 4> sign{
        {{1, 1, 1, 1}, {1, -1, -1, 1}, {1, 1, 1, 1}, {1, -1, -1, 1}}};
    if (j < 0 || j > 3) throw std::out_of_range("magic_basis_vector: index must be 0..3");
    pure_state4 s;
    for (int k = 0; k < 4; ++k) s.amp[support[j][k]] = 0.5 * sign[j][k];
    return s;
}

inline pure_state4 from_magic(const magic_coeffs& z) {
    pure_state4 s;
    for (int j = 0; j < 4; ++j) {
        if (z.z[j] == cplx{}) continue;
        const pure_state4 u = magic_basis_vector(j);
        for (int i = 0; i < 16; ++i) s.amp[i] += z.z[j] * u.amp[i];
    }
    return s;
}

// Projection onto span{u_j}: z_j = <u_j|s>, residual = ||s - sum z_j u_j||.
// Membership in the generic class is the caller's call, via the residual.
inline std::pair<magic_coeffs, double> to_magic(const pure_state4& s) {
    magic_coeffs z;
    for (int j = 0; j < 4; ++j) z.z[j] = inner(magic_basis_vector(j), s);
    const pure_state4 proj = from_magic(z);
    double res_sq = 0.0;
    for (int i = 0; i < 16; ++i) res_sq += std::norm(s.amp[i] - proj.amp[i]);
    return {z, std::sqrt(std::max(0.0, res_sq))};
}

enum class state_name { ghz4, c1, c2, c3, l, m };

inline std::optional<state_name> parse_state_name(std::string_view name) {
    if (name == "GHZ4" || name == "ghz4") return state_name::ghz4;
    if (name == "C1" || name == "c1") return state_name::c1;
    if (name == "C2" || name == "c2") return state_name::c2;
    if (name == "C3" || name == "c3") return state_name::c3;
    if (name == "L" || name == "l") return state_name::l;
    if (name == "M" || name == "m") return state_name::m;
    return std::nullopt;
}

inline pure_state4 named_state(state_name which) {
    pure_state4 s;
    switch (which) {
        case state_name::ghz4:
            s.amp[basis_index(0, 0, 0, 0)] = 1.0 / std::numbers::sqrt2;
            s.amp[basis_index(1, 1, 1, 1)] = 1.0 / std::numbers::sqrt2;
            return s;
        case state_name::c1:
            s.amp[basis_index(0, 0, 0, 0)] = 0.5;
            s.amp[basis_index(1, 1, 0, 0)] = 0.5;
            s.amp[basis_index(0, 0, 1, 1)] = 0.5;
            s.amp[basis_index(1, 1, 1, 1)] = -0.5;
            return s;
        case state_name::c2:
            s.amp[basis_index(0, 0, 0, 0)] = 0.5;
            s.amp[basis_index(0, 1, 1, 0)] = 0.5;
            s.amp[basis_index(1, 0, 0, 1)] = 0.5;
            s.amp[basis_index(1, 1, 1, 1)] = -0.5;
            return s;
        case state_name::c3:
            s.amp[basis_index(0, 0, 0, 0)] = 0.5;
            s.amp[basis_index(1, 0, 1, 0)] = 0.5;
            s.amp[basis_index(0, 1, 0, 1)] = 0.5;
            s.amp[basis_index(1, 1, 1, 1)] = -0.5;
            return s;
        case state_name::l: {
            const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
            const double r = 1.0 / std::sqrt(3.0);
            return from_magic({{r, r * w, r * w * w, 0.0}});
        }
        case state_name::m: {
            const cplx i{0.0, 1.0};
            const double r6 = 1.0 / std::sqrt(6.0);
            return from_magic({{i / std::numbers::sqrt2, r6, r6, r6}});
        }
    }
    throw std::invalid_argument("named_state: unknown name");
}

inline pure_state4 named_state(std::string_view name) {
    const auto id = parse_state_name(name);
    if (!id) throw std::invalid_argument("named_state: unknown name '" + std::string(name) + "'");
    return named_state(*id);
}

// Generic class: z uniform on the unit sphere of C^4 (Gaussian, normalized).
inline pure_state4 sample_class_A(std::mt19937_64& rng) {
    magic_coeffs z;
    double n = 0.0;
    for (int j = 0; j < 4; ++j) {
        z.z[j] = {detail::gaussian(rng), detail::gaussian(rng)};
        n += std::norm(z.z[j]);
    }
    n = std::sqrt(n);
    for (int j = 0; j < 4; ++j) z.z[j] /= n;
    return from_magic(z);
}

inline pure_state4 from_class_m(const class_m_params& mp) {
    double psum = 0.0;
    cplx closure = 0.0;
    for (int j = 0; j < 4; ++j) {
        if (mp.p[j] < 0.0) throw std::invalid_argument("from_class_m: negative weight");
        psum += mp.p[j];
        closure += mp.p[j] * std::polar(1.0, 2.0 * mp.theta[j]);
    }
    if (std::abs(psum - 1.0) > 1e-12)
        throw std::invalid_argument("from_class_m: weights must sum to 1");
    if (std::abs(closure) > 1e-10)
        throw std::invalid_argument("from_class_m: phase-closure constraint violated");
    magic_coeffs z;
    for (int j = 0; j < 4; ++j) z.z[j] = std::polar(std::sqrt(mp.p[j]), mp.theta[j]);
    return from_magic(z);
}

/// Samples the maximally entangled class: p uniform on the 3-simplex, the
/// first two doubled phases free, and the last two obtained by closing the
/// polygon p2 e^{i phi2} + p3 e^{i phi3} = -(p0 e^{i phi0} + p1 e^{i phi1})
/// (phi_j = 2 theta_j). Infeasible draws (triangle inequality) are
/// resampled. Each theta_j additionally gets a random pi shift, which the
/// constraint cannot see but the state can.
inline std::pair<pure_state4, class_m_params> sample_class_M(std::mt19937_64& rng) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (long attempt = 0; attempt < 1000000; ++attempt) {
        std::array<double, 4> p;
        double psum = 0.0;
        for (double& v : p) {
            double u = detail::uniform01(rng);
            while (u <= 0.0) u = detail::uniform01(rng);
            v = -std::log(u);
            psum += v;
        }
        for (double& v : p) v /= psum;

        const double phi0 = detail::uniform(rng, 0.0, two_pi);
        const double phi1 = detail::uniform(rng, 0.0, two_pi);
        const cplx w = -(p[0] * std::polar(1.0, phi0) + p[1] * std::polar(1.0, phi1));
        const double d = std::abs(w);
        if (d > p[2] + p[3] + 1e-15 || d < std::abs(p[2] - p[3]) - 1e-15) continue;

        double phi2, phi3;
        if (d < 1e-14) {
            if (std::abs(p[2] - p[3]) > 1e-14) continue;
            phi2 = detail::uniform(rng, 0.0, two_pi);
            phi3 = phi2 + std::numbers::pi;
        } else {
            double cosb = 1.0;
            if (p[2] > 1e-300) cosb = (p[2] * p[2] + d * d - p[3] * p[3]) / (2.0 * p[2] * d);
            cosb = std::clamp(cosb, -1.0, 1.0);
            const double beta = std::acos(cosb);
            const double branch = detail::uniform01(rng) < 0.5 ? 1.0 : -1.0;
            phi2 = std::arg(w) + branch * beta;
            const cplx rest = w - p[2] * std::polar(1.0, phi2);
            phi3 = std::abs(rest) > 1e-300 ? std::arg(rest) : 0.0;
        }

        class_m_params mp;
        mp.p = p;
        mp.theta = {phi0 / 2, phi1 / 2, phi2 / 2, phi3 / 2};
        for (double& th : mp.theta) {
            if (detail::uniform01(rng) < 0.5) th += std::numbers::pi;
            th = std::fmod(th + two_pi, two_pi);
        }

        cplx closure = 0.0;
        for (int j = 0; j < 4; ++j) closure += p[j] * std::polar(1.0, 2.0 * mp.theta[j]);
        if (std::abs(closure) > 1e-10) continue;

        return {from_class_m(mp), mp};
    }
    throw std::runtime_error("sample_class_M: rng failure, no feasible draw in 1e6 attempts");
}

// Class C of section-V fame: sqrt(p) e^{i theta} u0 + sqrt((1-p)/3)(u1+u2+u3)
// on the admissible region 1/2 <= p <= 1, cos^2 theta <= (1-p)/(3p).
inline pure_state4 sample_class_C(double p, double theta) {
    if (!(p >= 0.5 && p <= 1.0))
        throw std::invalid_argument("sample_class_C: p must lie in [1/2, 1]");
    const double c = std::cos(theta);
    if (c * c > (1.0 - p) / (3.0 * p) + 1e-12)
        throw std::invalid_argument("sample_class_C: cos^2(theta) exceeds (1-p)/(3p)");
    const double r = std::sqrt((1.0 - p) / 3.0);
    return from_magic({{std::polar(std::sqrt(p), theta), r, r, r}});
}

// Minimum-tau2 stratum: real coefficients on the unit 3-sphere.
inline pure_state4 sample_T_min(std::mt19937_64& rng) {
    std::array<double, 4> x;
    double n = 0.0;
    for (double& v : x) {
        v = detail::gaussian(rng);
        n += v * v;
    }
    n = std::sqrt(n);
    magic_coeffs z;
    for (int j = 0; j < 4; ++j) z.z[j] = x[j] / n;
    return from_magic(z);
}

// (1/2)[u0 + i u1 + e^{i theta} u2 + i e^{i theta} u3]
inline pure_state4 eq_last_state(double theta) {
    const cplx i{0.0, 1.0};
    const cplx e = std::polar(1.0, theta);
    return from_magic({{0.5, 0.5 * i, 0.5 * e, 0.5 * i * e}});
}

inline void check_local_operator(const local_operator& op) {
    for (const cmat2& g : op.factor) {
        if (op.kind == local_kind::unitary) {
            if (max_abs_diff(g.adjoint() * g, cmat2::identity()) > 1e-10)
                throw std::invalid_argument("apply_local: factor is not unitary");
        } else {
            const cplx det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
            if (std::abs(det - 1.0) > 1e-10)
                throw std::invalid_argument("apply_local: factor determinant is not 1");
        }
    }
}

// (g_A x g_B x g_C x g_D)|s>. No renormalization: unitary factors preserve
// the norm by themselves, special-linear factors act on the raw vector.
inline pure_state4 apply_local(const pure_state4& s, const local_operator& op) {
    check_local_operator(op);
    pure_state4 cur = s;
    for (int q = 0; q < 4; ++q) {
        const cmat2& g = op.factor[q];
        const int bit = 1 << (3 - q);
        pure_state4 next;
        for (int i = 0; i < 16; ++i) {
            const int i0 = i & ~bit;
            const int i1 = i | bit;
            const int row = (i & bit) ? 1 : 0;
            next.amp[i] = g(row, 0) * cur.amp[i0] + g(row, 1) * cur.amp[i1];
        }
        cur = next;
    }
    return cur;
}

inline bool is_permutation(const qubit_perm& sigma) {
    std::array<bool, 4> seen{};
    for (int v : sigma) {
        if (v < 0 || v > 3 || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

// Qubit sigma(q) of the result carries what qubit q carried. Composition
// convention: permute(permute(s, tau), sigma) == permute(s, compose(sigma, tau))
// with compose(sigma, tau)(q) = sigma(tau(q)).
inline pure_state4 permute_qubits(const pure_state4& s, const qubit_perm& sigma) {
    if (!is_permutation(sigma)) throw std::invalid_argument("permute_qubits: not a permutation");
    pure_state4 out;
    for (int i = 0; i < 16; ++i) {
        int j = 0;
        for (int q = 0; q < 4; ++q)
            if (i & (1 << (3 - q))) j |= 1 << (3 - sigma[q]);
        out.amp[j] = s.amp[i];
    }
    return out;
}

inline qubit_perm compose(const qubit_perm& sigma, const qubit_perm& tau) {
    qubit_perm r;
    for (int q = 0; q < 4; ++q) r[q] = sigma[tau[q]];
    return r;
}

// Haar-random U(2) via QR of a Ginibre matrix.
inline cmat2 random_unitary2(std::mt19937_64& rng) {
    cplx a{detail::gaussian(rng), detail::gaussian(rng)};
    cplx b{detail::gaussian(rng), detail::gaussian(rng)};
    cplx c{detail::gaussian(rng), detail::gaussian(rng)};
    cplx d{detail::gaussian(rng), detail::gaussian(rng)};
    // Gram-Schmidt on the columns (a,c), (b,d)
    double n1 = std::sqrt(std::norm(a) + std::norm(c));
    while (n1 < 1e-8) {
        a = {detail::gaussian(rng), detail::gaussian(rng)};
        c = {detail::gaussian(rng), detail::gaussian(rng)};
        n1 = std::sqrt(std::norm(a) + std::norm(c));
    }
    a /= n1;
    c /= n1;
    const cplx proj = std::conj(a) * b + std::conj(c) * d;
    b -= proj * a;
    d -= proj * c;
    double n2 = std::sqrt(std::norm(b) + std::norm(d));
    if (n2 < 1e-12) {
        b = -std::conj(c);
        d = std::conj(a);
        n2 = 1.0;
    }
    cmat2 u;
    u(0, 0) = a;
    u(1, 0) = c;
    u(0, 1) = b / n2;
    u(1, 1) = d / n2;
    // random phases keep the distribution Haar on U(2)
    const cplx p0 = std::polar(1.0, detail::uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const cplx p1 = std::polar(1.0, detail::uniform(rng, 0.0, 2.0 * std::numbers::pi));
    u(0, 0) *= p0;
    u(1, 0) *= p0;
    u(0, 1) *= p1;
    u(1, 1) *= p1;
    return u;
}

// Random SL(2,C): Ginibre divided by a square root of its determinant.
// Resamples nearly singular draws to keep condition numbers tame.
inline cmat2 random_special_linear2(std::mt19937_64& rng) {
    for (;;) {
        cmat2 g;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                g(i, j) = {detail::gaussian(rng), detail::gaussian(rng)};
        const cplx det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
        if (std::abs(det) < 0.1) continue;
        const cplx r = std::sqrt(det);
        for (auto& v : g.a) v /= r;
        return g;
    }
}

inline local_operator random_local_unitary(std::mt19937_64& rng) {
    local_operator op;
    op.kind = local_kind::unitary;
    for (auto& f : op.factor) f = random_unitary2(rng);
    return op;
}

inline local_operator random_local_special_linear(std::mt19937_64& rng) {
    local_operator op;
    op.kind = local_kind::special_linear;
    for (auto& f : op.factor) f = random_special_linear2(rng);
    return op;
}

// Haar-random state on the full 16-dimensional Hilbert space.
inline pure_state4 sample_haar(std::mt19937_64& rng) {
    pure_state4 s;
    double n = 0.0;
    for (cplx& v : s.amp) {
        v = {detail::gaussian(rng), detail::gaussian(rng)};
        n += std::norm(v);
    }
    n = std::sqrt(n);
    for (cplx& v : s.amp) v /= n;
    return s;
}

}  // namespace qent4

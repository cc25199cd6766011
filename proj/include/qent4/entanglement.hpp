// entanglement.hpp
// Reduced density matrices, cut spectra, tangles, Tsallis / Renyi / von
// Neumann entropies of entanglement, their averages over the 1+3 and 2+2
// cuts, the Schmidt-block discriminants, and the Kempf-Ness criticality
// check.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qent4/invariants.hpp"
#include "qent4/linalg.hpp"
#include "qent4/states.hpp"

namespace qent4 {

// Four nonnegative reals sorted descending, summing to 1.
using spectrum4 = std::array<double, 4>;

// Partial trace keeping the K listed qubits (0..3, strictly increasing).
template <std::size_t K>
inline cmat<(1u << K)> reduced_density(const pure_state4& s, const std::array<int, K>& keep) {
    static_assert(K >= 1 && K <= 3, "keep a nonempty proper subset");
    for (std::size_t i = 0; i < K; ++i) {
        if (keep[i] < 0 || keep[i] > 3)
            throw std::invalid_argument("reduced_density: qubit index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("reduced_density: keep list must be strictly increasing");
    }
    check_normalized(s, "reduced_density");

    cmat<(1u << K)> rho;
    for (int i = 0; i < 16; ++i) {
        int xi = 0;
        for (std::size_t t = 0; t < K; ++t)
            xi = (xi << 1) | ((i >> (3 - keep[t])) & 1);
        for (int j = 0; j < 16; ++j) {
            bool same_rest = true;
            for (int q = 0; q < 4 && same_rest; ++q) {
                bool kept = false;
                for (std::size_t t = 0; t < K; ++t) kept |= (keep[t] == q);
                if (!kept && (((i >> (3 - q)) & 1) != ((j >> (3 - q)) & 1))) same_rest = false;
            }
            if (!same_rest) continue;
            int xj = 0;
            for (std::size_t t = 0; t < K; ++t)
                xj = (xj << 1) | ((j >> (3 - keep[t])) & 1);
            rho(xi, xj) += s.amp[i] * std::conj(s.amp[j]);
        }
    }
    return rho;
}

inline cmat2 reduced_density1(const pure_state4& s, int q) {
    return reduced_density<1>(s, {q});
}

inline cmat4 reduced_density2(const pure_state4& s, int q1, int q2) {
    return reduced_density<2>(s, {q1, q2});
}

inline std::array<int, 2> cut_pair(cut c) {
    switch (c) {
        case cut::ab_cd: return {0, 1};
        case cut::ac_bd: return {0, 2};
        case cut::ad_bc: return {0, 3};
    }
    throw std::invalid_argument("cut_pair: bad cut");
}

// Eigenvalues of the two-qubit marginal on the A-side of the cut.
inline spectrum4 cut_spectrum(const pure_state4& s, cut c) {
    const auto pair = cut_pair(c);
    return hermitian_eigenvalues(reduced_density2(s, pair[0], pair[1]));
}

struct cut_spectra {
    spectrum4 P, Q, R;  // rho^AB, rho^AC, rho^AD spectra
};

namespace detail {

// Orthogonal matrices of the analytic spectra formulas: P_j = |z_j|^2,
// Q_j = |sum_k A_jk z_k|^2, R_j = |sum_k B_jk z_k|^2.
inline constexpr std::array<std::array<double, 4>, 4> spectra_matrix_A{{
    {0.5, 0.5, 0.5, 0.5},
    {0.5, 0.5, -0.5, -0.5},
    {0.5, -0.5, 0.5, -0.5},
    {0.5, -0.5, -0.5, 0.5},
}};

inline constexpr std::array<std::array<double, 4>, 4> spectra_matrix_B{{
    {0.5, -0.5, -0.5, -0.5},
    {0.5, -0.5, 0.5, 0.5},
    {0.5, 0.5, -0.5, 0.5},
    {0.5, 0.5, 0.5, -0.5},
}};

inline spectrum4 mapped_spectrum(const std::array<std::array<double, 4>, 4>& m,
                                 const magic_coeffs& z) {
    spectrum4 sp{};
    for (int j = 0; j < 4; ++j) {
        cplx v = 0.0;
        for (int k = 0; k < 4; ++k) v += m[j][k] * z.z[k];
        sp[j] = std::norm(v);
    }
    std::sort(sp.begin(), sp.end(), std::greater<double>());
    return sp;
}

}  // namespace detail

// Analytic cut spectra of a generic-class state, no partial trace involved.
inline cut_spectra magic_cut_spectra(const magic_coeffs& z) {
    double n = 0.0;
    for (const cplx& v : z.z) n += std::norm(v);
    if (std::abs(n - 1.0) > 1e-10)
        throw std::invalid_argument("magic_cut_spectra: coefficients are not normalized");
    cut_spectra cs;
    for (int j = 0; j < 4; ++j) cs.P[j] = std::norm(z.z[j]);
    std::sort(cs.P.begin(), cs.P.end(), std::greater<double>());
    cs.Q = detail::mapped_spectrum(detail::spectra_matrix_A, z);
    cs.R = detail::mapped_spectrum(detail::spectra_matrix_B, z);
    return cs;
}

// S_L = 2(1 - sum lambda^2), in [0, 3/2] on four-point spectra.
inline double linear_entropy(const spectrum4& sp) {
    double s2 = 0.0;
    for (double v : sp) s2 += v * v;
    return 2.0 * (1.0 - s2);
}

// Tangle across a 2+2 cut: linear entropy of the cut marginal.
inline double tangle(const pure_state4& s, cut c) {
    return linear_entropy(cut_spectrum(s, c));
}

// Tangle between one qubit and the remaining three (max 1).
inline double tangle_1v3(const pure_state4& s, int q) {
    const cmat2 rho = reduced_density1(s, q);
    double purity = 0.0;
    for (const cplx& v : rho.a) purity += std::norm(v);
    return 2.0 * (1.0 - purity);
}

// tau_AB = |<phi|phi~>|^2 with phi~ = sy x sy |phi*>, the squared
// concurrence of a two-qubit pure state (amplitude order |00>,|01>,|10>,|11>).
inline double concurrence_squared_pure2(const std::array<cplx, 4>& phi) {
    double n = 0.0;
    for (const cplx& v : phi) n += std::norm(v);
    if (std::abs(n - 1.0) > 1e-10)
        throw std::invalid_argument("concurrence_squared_pure2: state is not normalized");
    // sy x sy |b1 b2> = -(-1)^{ones} |~b1 ~b2>
    const cplx overlap = std::conj(phi[0]) * std::conj(phi[3]) * (-1.0) +
                         std::conj(phi[1]) * std::conj(phi[2]) +
                         std::conj(phi[2]) * std::conj(phi[1]) +
                         std::conj(phi[3]) * std::conj(phi[0]) * (-1.0);
    return std::norm(overlap);
}

// Mean tangle over the four 1+3 cuts.
inline double tau1(const pure_state4& s) {
    check_normalized(s, "tau1");
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) acc += tangle_1v3(s, q);
    return acc / 4.0;
}

// Mean tangle over the three 2+2 cuts.
inline double tau2(const pure_state4& s) {
    check_normalized(s, "tau2");
    double acc = 0.0;
    for (cut c : all_cuts) acc += tangle(s, c);
    return acc / 3.0;
}

struct tangle_summary {
    std::array<double, 3> per_cut{};  // ab_cd, ac_bd, ad_bc
    double tau1 = 0.0;
    double tau2 = 0.0;
    double four_tangle = 0.0;
};

inline tangle_summary summarize_tangles(const pure_state4& s) {
    tangle_summary ts;
    for (int c = 0; c < 3; ++c) ts.per_cut[c] = tangle(s, static_cast<cut>(c));
    ts.tau2 = (ts.per_cut[0] + ts.per_cut[1] + ts.per_cut[2]) / 3.0;
    ts.tau1 = tau1(s);
    ts.four_tangle = four_tangle(s);
    return ts;
}

enum class entropy_family { tsallis, renyi, von_neumann };

struct entropy_measure {
    entropy_family family = entropy_family::von_neumann;
    double alpha = 1.0;
};

/// Entropy of a spectrum. Renyi and von Neumann are in bits (log base 2),
/// Tsallis follows the paper's log-free formula and is dimensionless.
/// Requests with |alpha - 1| < 1e-6 route to the von Neumann limit; for
/// Tsallis that limit is in nats (it differs from the bits value by ln 2,
/// and the two conventions are never mixed).
inline double entropy(const spectrum4& sp, entropy_measure m) {
    if (m.family != entropy_family::von_neumann) {
        if (!(m.alpha > 0.0)) throw std::invalid_argument("entropy: alpha must be positive");
        if (std::abs(m.alpha - 1.0) < 1e-6) {
            double h = 0.0;
            for (double v : sp)
                if (v > 0.0) h -= v * std::log(v);
            return m.family == entropy_family::renyi ? h / std::numbers::ln2 : h;
        }
        double t = 0.0;
        for (double v : sp)
            if (v > 0.0) t += std::pow(v, m.alpha);
        if (m.family == entropy_family::renyi) return std::log2(t) / (1.0 - m.alpha);
        return (t - 1.0) / (1.0 - m.alpha);
    }
    double h = 0.0;
    for (double v : sp)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

inline spectrum4 single_qubit_spectrum(const pure_state4& s, int q) {
    const cmat2 rho = reduced_density1(s, q);
    const double a = rho(0, 0).real();
    const double c = rho(1, 1).real();
    const double half_gap = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(rho(0, 1)));
    const double hi = std::clamp(0.5 * (a + c) + half_gap, 0.0, 1.0);
    return {hi, std::max(0.0, 1.0 - hi), 0.0, 0.0};
}

// Mean alpha-entropy over the four 1+3 cuts.
inline double avg_entropy_E1(const pure_state4& s, entropy_measure m) {
    check_normalized(s, "avg_entropy_E1");
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) acc += entropy(single_qubit_spectrum(s, q), m);
    return acc / 4.0;
}

// Mean alpha-entropy over the three 2+2 cuts.
inline double avg_entropy_E2(const pure_state4& s, entropy_measure m) {
    check_normalized(s, "avg_entropy_E2");
    double acc = 0.0;
    for (cut c : all_cuts) acc += entropy(cut_spectrum(s, c), m);
    return acc / 3.0;
}

namespace detail {

// Schmidt split of |psi> across A|(BCD): eigen-decompose rho^A, project the
// amplitudes onto the eigenvectors. Returns (p0, p1) descending and the two
// normalized 8-dimensional BCD vectors (index 4b + 2c + d).
struct schmidt_a_t {
    double p0 = 0.0, p1 = 0.0;
    std::array<std::array<cplx, 8>, 2> phi{};
};

inline schmidt_a_t schmidt_split_a(const pure_state4& s) {
    const cmat2 rho = reduced_density1(s, 0);
    const double a = rho(0, 0).real();
    const double c = rho(1, 1).real();
    const cplx b = rho(0, 1);
    const double half_gap = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
    const double hi = 0.5 * (a + c) + half_gap;
    const double lo = 0.5 * (a + c) - half_gap;

    std::array<std::array<cplx, 2>, 2> evec;
    if (std::abs(b) > 1e-14) {
        for (int k = 0; k < 2; ++k) {
            const double lam = (k == 0) ? hi : lo;
            cplx v0 = b, v1 = lam - a;
            const double n = std::sqrt(std::norm(v0) + std::norm(v1));
            evec[k] = {v0 / n, v1 / n};
        }
    } else {
        const bool first_is_hi = a >= c;
        evec[0] = {first_is_hi ? 1.0 : 0.0, first_is_hi ? 0.0 : 1.0};
        evec[1] = {first_is_hi ? 0.0 : 1.0, first_is_hi ? 1.0 : 0.0};
    }

    schmidt_a_t out;
    out.p0 = std::clamp(hi, 0.0, 1.0);
    out.p1 = std::clamp(lo, 0.0, 1.0);
    for (int k = 0; k < 2; ++k) {
        double nsq = 0.0;
        for (int i = 0; i < 8; ++i) {
            // w_k[i] = sum_a conj(e_k[a]) amp[a,i]
            out.phi[k][i] = std::conj(evec[k][0]) * s.amp[i] + std::conj(evec[k][1]) * s.amp[8 + i];
            nsq += std::norm(out.phi[k][i]);
        }
        if (nsq > 1e-24) {
            const double n = std::sqrt(nsq);
            for (auto& v : out.phi[k]) v /= n;
        }
    }
    return out;
}

// sigma_X^{kk'} = Tr_{not X} |phi^k><phi^k'| over the BCD factors, X in {1,2,3}.
inline cmat2 schmidt_block(const schmidt_a_t& sd, int X, int k, int kp) {
    cmat2 m;
    const int shift = 3 - X;  // bit position of X inside the BCD index
    for (int i = 0; i < 8; ++i) {
        const int bi = (i >> shift) & 1;
        for (int bj = 0; bj < 2; ++bj) {
            const int j = (i & ~(1 << shift)) | (bj << shift);
            m(bi, bj) += sd.phi[k][i] * std::conj(sd.phi[kp][j]);
        }
    }
    return m;
}

}  // namespace detail

/// Discriminant D_X = Tr(sigma_X^00 sigma_X^11 - sigma_X^01 sigma_X^10)
/// of the A-Schmidt split, X in {1,2,3} naming qubit B, C or D. States
/// that are product across A (p1 = 0) return 0 by convention.
inline double discriminant(const pure_state4& s, int X) {
    if (X < 1 || X > 3) throw std::invalid_argument("discriminant: X must name qubit B, C or D");
    check_normalized(s, "discriminant");
    const auto sd = detail::schmidt_split_a(s);
    if (sd.p1 <= 1e-14) return 0.0;
    const cmat2 m = detail::schmidt_block(sd, X, 0, 0) * detail::schmidt_block(sd, X, 1, 1) -
                    detail::schmidt_block(sd, X, 0, 1) * detail::schmidt_block(sd, X, 1, 0);
    return m.trace().real();
}

// True iff every single-qubit marginal equals I/2 within tol entrywise
// (the Kempf-Ness criticality condition; Crit(H_4) = K*A).
inline bool is_critical(const pure_state4& s, double tol) {
    check_normalized(s, "is_critical");
    return detail::marginals_maximally_mixed(s, tol);
}

}  // namespace qent4

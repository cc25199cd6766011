// invariants.hpp
// The SL(2,C)^x4-invariant polynomials E_0..E_3, the derived local-unitary
// invariant set f_0..f_6, the 4-tangle by two independent routes, and
// SLOCC / LU equivalence verdicts.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qent4/linalg.hpp"
#include "qent4/states.hpp"

namespace qent4 {

struct not_in_class_a_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The three inequivalent 2+2 bipartite cuts. ab_cd is the canonical cut of
// the invariant definitions.
enum class cut { ab_cd = 0, ac_bd = 1, ad_bc = 2 };

inline constexpr std::array<cut, 3> all_cuts{cut::ab_cd, cut::ac_bd, cut::ad_bc};

// T_{kk'} = amplitude of |k>>|k'>> where k indexes the first pair of the
// cut and k' the second.
inline cmat4 t_matrix(const pure_state4& s, cut c) {
    cmat4 t;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
                for (int d = 0; d < 2; ++d) {
                    const cplx amp = s.amp[basis_index(a, b, cc, d)];
                    switch (c) {
                        case cut::ab_cd: t(2 * a + b, 2 * cc + d) = amp; break;
                        case cut::ac_bd: t(2 * a + cc, 2 * b + d) = amp; break;
                        case cut::ad_bc: t(2 * a + d, 2 * b + cc) = amp; break;
                    }
                }
    return t;
}

// J of Definition 1: antidiagonal (1, -1, -1, 1).
inline cmat4 j_matrix() {
    cmat4 j;
    j(0, 3) = 1.0;
    j(1, 2) = -1.0;
    j(2, 1) = -1.0;
    j(3, 0) = 1.0;
    return j;
}

// E_0 = Det[T], E_m = Tr[(T J T^t J)^m] for m = 1,2,3, always on the
// AB|CD cut. On the generic class these reduce to z0 z1 z2 z3 and
// sum_j z_j^{2m}.
inline cplx invariant_E(const pure_state4& s, int m) {
    if (m < 0 || m > 3) throw std::out_of_range("invariant_E: m must be 0..3");
    const cmat4 t = t_matrix(s, cut::ab_cd);
    if (m == 0) return determinant4(t);
    const cmat4 j = j_matrix();
    return trace_power(t * j * t.transpose() * j, m);
}

struct invariant_vector_t {
    std::array<cplx, 4> E{};   // E_0..E_3
    std::array<double, 7> f{}; // f_0..f_6
};

inline invariant_vector_t invariant_vector(const pure_state4& s) {
    check_normalized(s, "invariant_vector");
    invariant_vector_t iv;
    const cmat4 t = t_matrix(s, cut::ab_cd);
    const cmat4 j = j_matrix();
    const cmat4 r = t * j * t.transpose() * j;
    iv.E[0] = determinant4(t);
    cmat4 p = r;
    iv.E[1] = p.trace();
    p = p * r;
    iv.E[2] = p.trace();
    p = p * r;
    iv.E[3] = p.trace();

    iv.f[0] = std::sqrt(std::abs(iv.E[0]));
    for (int m = 1; m <= 3; ++m) iv.f[m] = std::pow(std::abs(iv.E[m]), 1.0 / m);
    iv.f[4] = std::norm(iv.E[1] * iv.E[1] - iv.E[0]);
    iv.f[5] = std::norm(iv.E[1] * iv.E[1] - iv.E[2]);
    iv.f[6] = std::norm(iv.E[1] * iv.E[1] * iv.E[1] - iv.E[3]);
    return iv;
}

// Wong-Christensen 4-tangle |<psi| sy x sy x sy x sy |psi*>|^2, evaluated
// literally in the computational basis with sy = [[0, i], [-i, 0]].
inline double four_tangle_sigma(const pure_state4& s) {
    check_normalized(s, "four_tangle_sigma");
    // sy|0> = -i|1>, sy|1> = i|0>: acting on |b1 b2 b3 b4> flips all bits
    // and contributes a phase i^(#ones - #zeros) = i^(2*#ones - 4).
    cplx acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        const int ones = std::popcount(static_cast<unsigned>(i));
        // i^(2*ones) = (-1)^ones; i^-4 = 1
        const double phase = (ones % 2 == 0) ? 1.0 : -1.0;
        acc += std::conj(s.amp[i]) * phase * std::conj(s.amp[15 - i]);
    }
    return std::norm(acc);
}

// Proposition-4 route: the 4-tangle equals |E_1|^2.
inline double four_tangle(const pure_state4& s) {
    check_normalized(s, "four_tangle");
    return std::norm(invariant_E(s, 1));
}

enum class lu_verdict { equivalent, inequivalent, inconclusive };

namespace detail {

// Purity of the two-qubit marginal that keeps qubit A and its cut partner;
// the tangle across a 2+2 cut is 2(1 - purity). No eigensolver needed.
inline double pair_marginal_purity(const pure_state4& s, cut c) {
    const cmat4 t = t_matrix(s, c);
    const cmat4 rho = t * t.adjoint();
    double p = 0.0;
    for (const cplx& v : rho.a) p += std::norm(v);
    return p;
}

inline std::array<double, 3> tangle_triple(const pure_state4& s) {
    std::array<double, 3> tr;
    for (int c = 0; c < 3; ++c)
        tr[c] = 2.0 * (1.0 - pair_marginal_purity(s, static_cast<cut>(c)));
    return tr;
}

inline cmat2 single_qubit_marginal(const pure_state4& s, int q) {
    cmat2 rho;
    const int bit = 1 << (3 - q);
    for (int i = 0; i < 16; ++i) {
        const int ri = (i & bit) ? 1 : 0;
        const int j = i ^ bit;
        rho(ri, ri) += std::norm(s.amp[i]);
        rho(ri, 1 - ri) += s.amp[i] * std::conj(s.amp[j]);
    }
    return rho;
}

// Crit(H_4) = K*A: every single-qubit marginal is I/2.
inline bool marginals_maximally_mixed(const pure_state4& s, double tol) {
    cmat2 half = cmat2::identity();
    half(0, 0) = 0.5;
    half(1, 1) = 0.5;
    for (int q = 0; q < 4; ++q)
        if (max_abs_diff(single_qubit_marginal(s, q), half) > tol) return false;
    return true;
}

// Compare f_m = |E_m|^{1/m} at tolerance tol. Fractional roots amplify
// noise near zero (|E| ~ 1e-16 already gives f_3 ~ 5e-6), so a pair also
// counts as matching when the underlying moduli agree within tol.
inline bool root_invariant_match(double fa, double fb, double ea, double eb, double tol) {
    return std::abs(fa - fb) <= tol || std::abs(ea - eb) <= tol;
}

}  // namespace detail

/// LU-equivalence verdict via the invariant set f_0..f_6.
///
/// The iff of the invariant criterion holds on the critical set K*A (all
/// single-qubit marginals maximally mixed); there matching invariants mean
/// "equivalent" and any mismatch means "inequivalent". Outside it the
/// criterion is only necessary: a mismatch still proves "inequivalent",
/// a match is "inconclusive". The ordered per-cut tangle triple, itself a
/// local-unitary invariant, is compared alongside f_0..f_6; it separates
/// states on the E_1 = 0 stratum where the f's lose resolution (the two
/// cluster classes with swapped tangle patterns share every f_m).
inline lu_verdict lu_equivalent(const pure_state4& a, const pure_state4& b, double tol) {
    check_normalized(a, "lu_equivalent");
    check_normalized(b, "lu_equivalent");
    const invariant_vector_t ia = invariant_vector(a);
    const invariant_vector_t ib = invariant_vector(b);

    bool match = true;
    match &= detail::root_invariant_match(ia.f[0], ib.f[0], std::abs(ia.E[0]),
                                          std::abs(ib.E[0]), tol);
    for (int m = 1; m <= 3; ++m)
        match &= detail::root_invariant_match(ia.f[m], ib.f[m], std::abs(ia.E[m]),
                                              std::abs(ib.E[m]), tol);
    for (int m = 4; m <= 6; ++m) match &= std::abs(ia.f[m] - ib.f[m]) <= tol;

    const auto ta = detail::tangle_triple(a);
    const auto tb = detail::tangle_triple(b);
    for (int c = 0; c < 3; ++c) match &= std::abs(ta[c] - tb[c]) <= tol;

    if (!match) return lu_verdict::inequivalent;
    const double crit_tol = std::max(1e-7, tol);
    const bool gate = detail::marginals_maximally_mixed(a, crit_tol) &&
                      detail::marginals_maximally_mixed(b, crit_tol);
    return gate ? lu_verdict::equivalent : lu_verdict::inconclusive;
}

// SLOCC obstruction on the generic class: a -> b is impossible by SLOCC
// if some monotone f_m (m = 0..3) differs. Both states must project onto
// span{u_j} within tol.
inline bool slocc_obstruction(const pure_state4& a, const pure_state4& b, double tol) {
    check_normalized(a, "slocc_obstruction");
    check_normalized(b, "slocc_obstruction");
    if (to_magic(a).second >= tol || to_magic(b).second >= tol)
        throw not_in_class_a_error("slocc_obstruction: state is not in the generic class");
    const invariant_vector_t ia = invariant_vector(a);
    const invariant_vector_t ib = invariant_vector(b);
    for (int m = 0; m <= 3; ++m) {
        const bool ok = detail::root_invariant_match(ia.f[m], ib.f[m], std::abs(ia.E[m]),
                                                     std::abs(ib.E[m]), tol);
        if (!ok) return true;
    }
    return false;
}

}  // namespace qent4

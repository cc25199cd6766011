// verify.hpp
// The property-verification suite behind the `verify` CLI command: every
// identity, bound, oracle agreement, extremality statement and lemma sign
// condition the library is supposed to uphold, runnable at an arbitrary
// sample budget with a fixed seed.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qent4/entanglement.hpp"
#include "qent4/extremal.hpp"
#include "qent4/invariants.hpp"
#include "qent4/search.hpp"
#include "qent4/states.hpp"
#include "qent4/threading.hpp"

namespace qent4 {

struct property_result {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // worst-case deviation (property-specific scale)
    std::string note;
};

struct verify_options {
    std::uint64_t seed = 7;
    int samples = 1000;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// max over [0, n) of a per-index deviation, evaluated in parallel
template <typename F>
inline double parallel_worst(std::size_t n, F&& dev) {
    std::vector<double> d(n, 0.0);
    parallel_for(n, [&](std::size_t i) { d[i] = dev(i); });
    double worst = 0.0;
    for (double v : d) worst = std::max(worst, v);
    return worst;
}

// random spectrum on the slice {sum = 1, sum of squares = 1 - tau/2}:
// Dirichlet proposal rescaled radially around the centroid, rejected when
// it leaves the simplex
inline spectrum4 sample_fixed_tau_spectrum(std::mt19937_64& rng, double tau) {
    const double target = 1.0 - 0.5 * tau - 0.25;  // sum (lam - 1/4)^2
    for (;;) {
        std::array<double, 4> lam;
        double s = 0.0;
        for (double& v : lam) {
            double u = uniform01(rng);
            while (u <= 0.0) u = uniform01(rng);
            v = -std::log(u);
            s += v;
        }
        double css = 0.0;
        for (double& v : lam) {
            v /= s;
            css += (v - 0.25) * (v - 0.25);
        }
        if (css < 1e-12) continue;
        const double scale = std::sqrt(target / css);
        spectrum4 out;
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            out[i] = 0.25 + scale * (lam[i] - 0.25);
            ok &= out[i] >= 0.0 && out[i] <= 1.0;
        }
        if (!ok) continue;
        std::sort(out.begin(), out.end(), std::greater<double>());
        return out;
    }
}

inline spectrum4 sample_simplex_spectrum(std::mt19937_64& rng) {
    spectrum4 lam;
    double s = 0.0;
    for (double& v : lam) {
        double u = uniform01(rng);
        while (u <= 0.0) u = uniform01(rng);
        v = -std::log(u);
        s += v;
    }
    for (double& v : lam) v /= s;
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return lam;
}

inline pure_state4 mixed_corpus_state(std::mt19937_64& rng, std::uint64_t i) {
    switch (i % 4) {
        case 0: return sample_haar(rng);
        case 1: return sample_class_A(rng);
        case 2: return apply_local(sample_class_A(rng), random_local_unitary(rng));
        default: return sample_class_M(rng).first;
    }
}

inline const std::array<qubit_perm, 24>& all_permutations() {
    static const std::array<qubit_perm, 24> perms = [] {
        std::array<qubit_perm, 24> out{};
        qubit_perm p{0, 1, 2, 3};
        int k = 0;
        do {
            out[k++] = p;
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return perms;
}

}  // namespace detail

inline std::vector<property_result> run_verification(const verify_options& opt) {
    using detail::mix_seed;
    std::vector<property_result> results;
    const int n = std::max(1, opt.samples);

    auto add = [&](std::string name, bool pass, double worst, std::string note = "") {
        results.push_back({std::move(name), pass, worst, std::move(note)});
    };

    // the tangle decomposition identity and bounds, on a Haar + generic-class mix
    {
        double worst_id = 0.0, worst_lo = 0.0, worst_hi = 0.0;
        std::vector<std::array<double, 3>> dev(n);
        parallel_for(n, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed, i));
            const pure_state4 s = (i % 2 == 0) ? sample_haar(rng) : sample_class_A(rng);
            const double t1 = tau1(s), t2 = tau2(s), t4 = four_tangle(s);
            dev[i] = {std::abs(3.0 * t2 - 4.0 * t1 + t4), t1 - t2, t2 - 4.0 / 3.0 * t1};
        });
        for (const auto& d : dev) {
            worst_id = std::max(worst_id, d[0]);
            worst_lo = std::max(worst_lo, d[1]);
            worst_hi = std::max(worst_hi, d[2]);
        }
        add("tangle-decomposition-identity", worst_id < 1e-8, worst_id,
            "|3 tau2 - 4 tau1 + tau_ABCD|");
        add("tangle-bounds", worst_lo <= 1e-10 && worst_hi <= 1e-10,
            std::max(worst_lo, worst_hi), "tau1 <= tau2 <= (4/3) tau1");
    }

    // the 4-tangle by two routes: |E1|^2 against the sigma-y matrix element
    {
        const double worst = detail::parallel_worst(n, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x11, i));
            const pure_state4 s = (i % 2 == 0) ? sample_haar(rng) : sample_class_A(rng);
            return std::abs(four_tangle(s) - four_tangle_sigma(s));
        });
        add("four-tangle-dual-route", worst < 1e-9, worst);
    }

    // f1 is permutation invariant
    {
        const int m = std::min(n, 1000);
        const double worst = detail::parallel_worst(m, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x22, i));
            const pure_state4 s = sample_haar(rng);
            const double f1 = invariant_vector(s).f[1];
            double d = 0.0;
            for (const qubit_perm& p : detail::all_permutations())
                d = std::max(d, std::abs(invariant_vector(permute_qubits(s, p)).f[1] - f1));
            return d;
        });
        add("f1-permutation-invariance", worst < 1e-9, worst, "all 24 permutations");
    }

    // ... while f0, f2, f3 are not: exhibit a state and permutation moving each
    {
        std::array<double, 7> moved{};
        std::mt19937_64 rng(mix_seed(opt.seed ^ 0x33, 0));
        for (int trial = 0; trial < 50; ++trial) {
            const pure_state4 s = sample_class_A(rng);
            const auto base = invariant_vector(s);
            for (const qubit_perm& p : detail::all_permutations()) {
                const auto iv = invariant_vector(permute_qubits(s, p));
                for (int k : {0, 2, 3})
                    moved[k] = std::max(moved[k], std::abs(iv.f[k] - base.f[k]));
            }
            if (moved[0] > 1e-3 && moved[2] > 1e-3 && moved[3] > 1e-3) break;
        }
        const bool pass = moved[0] > 1e-3 && moved[2] > 1e-3 && moved[3] > 1e-3;
        add("f0-f2-f3-permutation-counterexamples", pass,
            std::min({moved[0], moved[2], moved[3]}), "smallest exhibited move");
    }

    // E_m homogeneity under scaling
    {
        const double worst = detail::parallel_worst(std::min(n, 10000), [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x44, i));
            const pure_state4 s = sample_haar(rng);
            const cplx c{detail::uniform(rng, 0.5, 1.5), detail::uniform(rng, -0.5, 0.5)};
            pure_state4 cs = s;
            for (cplx& v : cs.amp) v *= c;
            double d = 0.0;
            const cplx c4 = c * c * c * c;
            d = std::max(d, std::abs(invariant_E(cs, 0) - c4 * invariant_E(s, 0)) /
                                std::max(1e-30, std::abs(c4 * invariant_E(s, 0))));
            cplx cp = 1.0;
            for (int m = 1; m <= 3; ++m) {
                cp *= c * c;
                d = std::max(d, std::abs(invariant_E(cs, m) - cp * invariant_E(s, m)) /
                                    std::max(1e-30, std::abs(cp * invariant_E(s, m))));
            }
            return d;
        });
        add("em-homogeneity", worst < 1e-9, worst, "relative");
    }

    // monotone direction: f_m cannot grow under normalized SLOCC action on
    // critical states
    {
        const double worst = detail::parallel_worst(std::min(n, 10000), [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x55, i));
            const pure_state4 s = sample_class_A(rng);
            const pure_state4 gs = apply_local(s, random_local_special_linear(rng)).normalized();
            const auto a = invariant_vector(s), b = invariant_vector(gs);
            double d = 0.0;
            for (int m = 0; m <= 3; ++m) d = std::max(d, b.f[m] - a.f[m]);
            return d;
        });
        add("slocc-monotone-direction", worst <= 1e-9, worst, "max f_m growth");
    }

    // analytic cut spectra against the partial-trace route
    {
        const double worst = detail::parallel_worst(n, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x66, i));
            const pure_state4 s = sample_class_A(rng);
            const auto [z, res] = to_magic(s);
            (void)res;
            const cut_spectra cs = magic_cut_spectra(z);
            double d = 0.0;
            const spectrum4 p = cut_spectrum(s, cut::ab_cd);
            const spectrum4 q = cut_spectrum(s, cut::ac_bd);
            const spectrum4 r = cut_spectrum(s, cut::ad_bc);
            for (int k = 0; k < 4; ++k) {
                d = std::max(d, std::abs(cs.P[k] - p[k]));
                d = std::max(d, std::abs(cs.Q[k] - q[k]));
                d = std::max(d, std::abs(cs.R[k] - r[k]));
            }
            return d;
        });
        add("magic-spectra-oracle", worst < 1e-9, worst, "sorted spectra, all three cuts");
    }

    // entropy identities on random spectra
    {
        double worst_ts = 0.0, worst_ry = 0.0, worst_mono = 0.0, worst_cont = 0.0;
        std::vector<std::array<double, 4>> dev(std::min(n, 20000));
        parallel_for(dev.size(), [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x77, i));
            const spectrum4 sp = detail::sample_simplex_spectrum(rng);
            const double sl = linear_entropy(sp);
            const double ts = std::abs(entropy(sp, {entropy_family::tsallis, 2.0}) - 0.5 * sl);
            const double ry =
                std::abs(entropy(sp, {entropy_family::renyi, 2.0}) + std::log2(1.0 - 0.5 * sl));
            double mono = 0.0;
            double prev = entropy(sp, {entropy_family::renyi, 0.25});
            for (double alpha : {0.5, 0.8, 1.2, 1.7, 2.0, 3.0, 5.0, 9.0}) {
                const double cur = entropy(sp, {entropy_family::renyi, alpha});
                mono = std::max(mono, cur - prev);
                prev = cur;
            }
            const double vn = entropy(sp, {entropy_family::von_neumann, 1.0});
            const double cont =
                std::max(std::abs(entropy(sp, {entropy_family::renyi, 1.0 + 1e-4}) - vn),
                         std::abs(entropy(sp, {entropy_family::renyi, 1.0 - 1e-4}) - vn));
            dev[i] = {ts, ry, mono, cont};
        });
        for (const auto& d : dev) {
            worst_ts = std::max(worst_ts, d[0]);
            worst_ry = std::max(worst_ry, d[1]);
            worst_mono = std::max(worst_mono, d[2]);
            worst_cont = std::max(worst_cont, d[3]);
        }
        add("tsallis2-tangle-link", worst_ts <= 1e-12, worst_ts, "E_T(2) = S_L / 2");
        add("renyi2-tangle-link", worst_ry <= 1e-10, worst_ry, "E_R(2) = -log2(1 - S_L/2)");
        add("renyi-alpha-monotone", worst_mono <= 1e-12, worst_mono, "non-increasing in alpha");
        add("alpha-to-1-continuity", worst_cont < 1e-3, worst_cont, "Renyi at 1 +/- 1e-4 vs vN");
    }

    // criticality iff tau1 = 1, on a mixed corpus
    {
        const double worst = detail::parallel_worst(n, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x88, i));
            const pure_state4 s = detail::mixed_corpus_state(rng, i);
            const bool near_one = std::abs(tau1(s) - 1.0) < 1e-9;
            const bool crit = is_critical(s, 1e-7);
            return near_one == crit ? 0.0 : 1.0;
        });
        add("criticality-tau1-iff", worst == 0.0, worst, "disagreement count indicator");
    }

    // Kempf-Ness direction: the SLOCC group cannot shrink critical vectors
    {
        const double worst = detail::parallel_worst(std::min(n, 10000), [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0x99, i));
            const pure_state4 s = sample_class_A(rng);
            const pure_state4 gs = apply_local(s, random_local_special_linear(rng));
            return 1.0 - gs.norm();
        });
        add("kempf-ness-direction", worst <= 1e-10, worst, "1 - ||g psi||, critical psi");
    }

    // extremality on fixed-tangle spectrum slices
    {
        const std::array<double, 4> taus{0.5, 1.0, 4.0 / 3.0, 1.45};
        double worst = -1e300;
        bool pass = true;
        for (double tau : taus) {
            for (double alpha : {1.5, 3.0}) {
                const double lo_v = entropy(spectrum_lm1(tau), {entropy_family::tsallis, alpha});
                const double hi_v = entropy(spectrum_L1(tau), {entropy_family::tsallis, alpha});
                const double lo = std::min(lo_v, hi_v), hi = std::max(lo_v, hi_v);
                const double w = detail::parallel_worst(n / 8 + 1, [&](std::size_t i) {
                    std::mt19937_64 rng(mix_seed(opt.seed ^ 0xaa, i * 1000 + int(tau * 100) + int(alpha * 10)));
                    const spectrum4 sp = detail::sample_fixed_tau_spectrum(rng, tau);
                    const double v = entropy(sp, {entropy_family::tsallis, alpha});
                    return std::max(v - hi, lo - v);
                });
                worst = std::max(worst, w);
                pass &= w <= 1e-9;
            }
        }
        add("fixed-tangle-extremality", pass, worst, "bound violation, both alpha regimes");
    }

    // the two-pair critical distribution is strictly between the extremes
    {
        double margin = 1e300;
        bool pass = true;
        for (double tau = 1.05; tau < 1.4501; tau += 0.05) {
            const double x = std::sqrt(1.0 - 2.0 * tau / 3.0);
            const double r3 = std::sqrt(3.0) * x;
            const spectrum4 optb{(1.0 + r3) / 4.0, (1.0 + r3) / 4.0, (1.0 - r3) / 4.0,
                                 (1.0 - r3) / 4.0};
            const entropy_measure vn{entropy_family::von_neumann, 1.0};
            const double vb = entropy(optb, vn);
            const double vmax = entropy(spectrum_lm1(tau), vn);
            const double vmin = entropy(spectrum_L1(tau), vn);
            pass &= vb > vmin + 1e-6 && vb < vmax - 1e-6;
            margin = std::min({margin, vb - vmin, vmax - vb});
        }
        add("two-pair-exclusion", pass, margin, "strictly-between margin, vN scale");
    }

    // slope signs of the landscape auxiliaries, and their separation
    {
        bool pass = true;
        double worst = -1e300;
        auto slope_u = [](double alpha, double y) {
            return (u_alpha(alpha, y + 1e-6) - u_alpha(alpha, y)) / 1e-6;
        };
        auto slope_v = [](double alpha, double x) {
            return (v_alpha(alpha, x + 1e-6) - v_alpha(alpha, x)) / 1e-6;
        };
        for (double alpha = 2.1; alpha < 3.95; alpha += 0.2)
            for (double y = 0.0; y < 0.495; y += 0.025) {
                pass &= slope_u(alpha, y) < 0.0;
                worst = std::max(worst, slope_u(alpha, y));
            }
        for (double alpha = 2.1; alpha < 4.95; alpha += 0.2)
            for (double x = 0.0; x < 0.329; x += 0.02) {
                pass &= slope_v(alpha, x) < 0.0;
                worst = std::max(worst, slope_v(alpha, x));
            }
        for (double alpha = 0.2; alpha < 1.95; alpha += 0.2) {
            if (std::abs(alpha - 1.0) < 1e-9) continue;
            for (double y = 0.0; y < 0.495; y += 0.025) pass &= slope_u(alpha, y) > 0.0;
            for (double x = 0.0; x < 0.329; x += 0.02) pass &= slope_v(alpha, x) > 0.0;
        }
        add("lemma-uv-signs", pass, worst, "finite-difference slopes on the stated grids");

        bool sep = true;
        double gap = 1e300;
        for (double alpha : {4.0, 5.0, 8.0}) {
            double vmax = -1e300, umin = 1e300;
            for (double x = 0.0; x <= 1.0 / 3.0 + 1e-12; x += 1e-3)
                vmax = std::max(vmax, v_alpha(alpha, std::min(x, 1.0 / 3.0)));
            for (double y = 0.0; y <= 0.5 + 1e-12; y += 1e-3)
                umin = std::min(umin, u_alpha(alpha, std::min(y, 0.5)));
            sep &= vmax < umin;
            gap = std::min(gap, umin - vmax);
        }
        add("lemma-bb-separation", sep, gap, "min_y u - max_x v at alpha in {4,5,8}");
    }

    // the C2 cut-entropy pattern and its neighborhood
    {
        const entropy_measure vn{entropy_family::von_neumann, 1.0};
        const pure_state4 c2 = named_state(state_name::c2);
        const double hp = entropy(cut_spectrum(c2, cut::ab_cd), vn);
        const double hq = entropy(cut_spectrum(c2, cut::ac_bd), vn);
        const double hr = entropy(cut_spectrum(c2, cut::ad_bc), vn);
        const double exact = std::max({std::abs(hp - 2.0), std::abs(hq - 2.0), std::abs(hr - 1.0)});

        const int m = std::min(n, 5000);
        const double worst = detail::parallel_worst(m, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0xbb, i));
            // the H(P)=H(Q)=2 family, jittered
            const double gamma = detail::uniform(rng, 0.0, 2.0 * std::numbers::pi);
            magic_coeffs z{{0.5, -0.5, 0.5 * std::polar(1.0, gamma), 0.5 * std::polar(1.0, gamma)}};
            double nn = 0.0;
            for (auto& v : z.z) {
                v += cplx{1e-3 * detail::gaussian(rng), 1e-3 * detail::gaussian(rng)};
                nn += std::norm(v);
            }
            for (auto& v : z.z) v /= std::sqrt(nn);
            const pure_state4 s = from_magic(z);
            const double p = entropy(cut_spectrum(s, cut::ab_cd), vn);
            const double q = entropy(cut_spectrum(s, cut::ac_bd), vn);
            if (p < 2.0 - 1e-4 || q < 2.0 - 1e-4) return 0.0;  // outside the gate
            return entropy(cut_spectrum(s, cut::ad_bc), vn) - (1.0 + 1e-3);
        });
        add("cluster-entropy-pattern", exact < 1e-9 && worst <= 0.0, std::max(exact, worst),
            "C2 pattern (2,2,1) and H(R) <= 1 near the gate");
    }

    // class-M sampler: both defining constraints plus the corollary values
    {
        const double worst = detail::parallel_worst(n, [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0xcc, i));
            const auto [s, mp] = sample_class_M(rng);
            double psum = 0.0;
            cplx closure = 0.0;
            for (int j = 0; j < 4; ++j) {
                psum += mp.p[j];
                closure += mp.p[j] * std::polar(1.0, 2.0 * mp.theta[j]);
            }
            double d = std::abs(psum - 1.0) * 1e2;  // tolerance 1e-12 scaled to 1e-10
            d = std::max(d, std::abs(closure));
            d = std::max(d, four_tangle(s) * 1e8);  // tolerance 1e-18 scaled
            d = std::max(d, std::abs(tau2(s) - 4.0 / 3.0) * 0.1);
            return d;
        });
        add("classM-sampler-constraints", worst < 1e-10, worst,
            "simplex sum, phase closure, 4-tangle, tau2");
    }

    // magic round trip and the permutation group action
    {
        const double worst = detail::parallel_worst(std::min(n, 10000), [&](std::size_t i) {
            std::mt19937_64 rng(mix_seed(opt.seed ^ 0xdd, i));
            const pure_state4 s = sample_class_A(rng);
            const auto [z, res] = to_magic(s);
            const pure_state4 back = from_magic(z);
            double d = res;
            for (int k = 0; k < 16; ++k) d = std::max(d, std::abs(back.amp[k] - s.amp[k]));
            return d;
        });
        add("magic-roundtrip", worst < 1e-12, worst);

        bool exact = true;
        std::mt19937_64 rng(mix_seed(opt.seed ^ 0xee, 0));
        for (int trial = 0; trial < 50; ++trial) {
            const pure_state4 s = sample_haar(rng);
            const auto& perms = detail::all_permutations();
            const qubit_perm sigma = perms[rng() % 24], tau = perms[rng() % 24];
            const pure_state4 two = permute_qubits(permute_qubits(s, tau), sigma);
            const pure_state4 one = permute_qubits(s, compose(sigma, tau));
            for (int k = 0; k < 16; ++k) exact &= two.amp[k] == one.amp[k];
        }
        add("permutation-group-action", exact, exact ? 0.0 : 1.0, "bit-exact composition");
    }

    // footnote conjecture (E2 maximizers also maximize E1): reported as
    // evidence only, never asserted
    {
        const entropy_measure vn{entropy_family::von_neumann, 1.0};
        const double e1_l = avg_entropy_E1(named_state(state_name::l), vn);
        double corpus_max = 0.0;
        std::mt19937_64 rng(mix_seed(opt.seed ^ 0xff, 0));
        for (int i = 0; i < std::min(n, 2000); ++i)
            corpus_max = std::max(corpus_max, avg_entropy_E1(sample_haar(rng), vn));
        add("footnote-conjecture-evidence", true, e1_l - corpus_max,
            "E1(|L>) minus corpus max, vN (informational)");
    }

    return results;
}

}  // namespace qent4

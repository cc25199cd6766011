// linalg.hpp
// Minimal dense complex linear algebra for the fixed matrix sizes used in
// this library: products, determinants, traces of matrix powers, and a
// Hermitian eigenvalue solver for 4x4 matrices.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace qent4 {

using cplx = std::complex<double>;

struct non_hermitian_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct negative_eigenvalue_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense N x N complex matrix, row major.
template <std::size_t N>
struct cmat {
    std::array<cplx, N * N> a{};

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

    static cmat identity() {
        cmat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    cmat transpose() const {
        cmat m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    cmat adjoint() const {
        cmat m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend cmat operator*(const cmat& x, const cmat& y) {
        cmat m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx xik = x(i, k);
                if (xik == cplx{}) continue;
                for (std::size_t j = 0; j < N; ++j) m(i, j) += xik * y(k, j);
            }
        return m;
    }

    friend cmat operator+(const cmat& x, const cmat& y) {
        cmat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = x.a[i] + y.a[i];
        return m;
    }

    friend cmat operator-(const cmat& x, const cmat& y) {
        cmat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = x.a[i] - y.a[i];
        return m;
    }

    friend cmat operator*(cplx c, const cmat& x) {
        cmat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = c * x.a[i];
        return m;
    }

    // max_ij |x_ij - y_ij|
    friend double max_abs_diff(const cmat& x, const cmat& y) {
        double d = 0.0;
        for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
        return d;
    }
};

using cmat2 = cmat<2>;
using cmat4 = cmat<4>;

namespace detail {

// Cyclic Jacobi for a real symmetric M x M matrix, eigenvalues only.
// Stops when the off-diagonal Frobenius norm drops below 1e-14 (at most
// 30 sweeps). The matrix is destroyed.
template <std::size_t M>
inline std::array<double, M> jacobi_symmetric(std::array<std::array<double, M>, M>& a) {
    constexpr int max_sweeps = 30;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < M; ++p)
            for (std::size_t q = p + 1; q < M; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-28) break;

        for (std::size_t p = 0; p < M; ++p) {
            for (std::size_t q = p + 1; q < M; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) < 1e-300) continue;

                const double theta = 0.5 * (a[q][q] - a[p][p]) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double delta = t * apq;
                a[p][p] -= delta;
                a[q][q] += delta;
                a[p][q] = 0.0;
                a[q][p] = 0.0;

                for (std::size_t r = 0; r < M; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a[r][p];
                    const double arq = a[r][q];
                    a[r][p] = arp - s * (arq + tau * arp);
                    a[p][r] = a[r][p];
                    a[r][q] = arq + s * (arp - tau * arq);
                    a[q][r] = a[r][q];
                }
            }
        }
    }
    std::array<double, M> ev;
    for (std::size_t i = 0; i < M; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

}  // namespace detail

/// Eigenvalues of a 4x4 Hermitian matrix, sorted descending.
///
/// The Hermitian problem H = X + iY is solved on its real symmetric
/// embedding [[X, -Y], [Y, X]], whose spectrum is that of H with every
/// eigenvalue doubled. Inputs with trace 1 (within 1e-8) are treated as
/// density matrices: eigenvalues in [-1e-8, 0) are clamped to zero and
/// the spectrum is renormalized to sum 1; anything below -1e-8 throws
/// negative_eigenvalue_error instead of being silently fixed.
inline std::array<double, 4> hermitian_eigenvalues(const cmat4& m) {
    double herm_defect = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            herm_defect = std::max(herm_defect, std::abs(m(i, j) - std::conj(m(j, i))));
    if (herm_defect > 1e-10)
        throw non_hermitian_error("hermitian_eigenvalues: matrix is not Hermitian");

    std::array<std::array<double, 8>, 8> e{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double x = 0.5 * (m(i, j).real() + m(j, i).real());
            const double y = 0.5 * (m(i, j).imag() - m(j, i).imag());
            e[i][j] = x;
            e[i + 4][j + 4] = x;
            e[i][j + 4] = -y;
            e[i + 4][j] = y;
        }
    const auto doubled = detail::jacobi_symmetric<8>(e);

    std::array<double, 4> ev{doubled[0], doubled[2], doubled[4], doubled[6]};

    if (std::abs(m.trace().real() - 1.0) <= 1e-8) {
        double sum = 0.0;
        for (double& v : ev) {
            if (v < -1e-8)
                throw negative_eigenvalue_error(
                    "hermitian_eigenvalues: density matrix has eigenvalue below -1e-8");
            v = std::clamp(v, 0.0, 1.0);
            sum += v;
        }
        if (sum > 0.0)
            for (double& v : ev) v /= sum;
    }
    return ev;
}

// Determinant by Laplace expansion over the first two rows (sums of products
// of complementary 2x2 minors).
inline cplx determinant4(const cmat4& m) {
    auto top = [&](int j, int k) { return m(0, j) * m(1, k) - m(0, k) * m(1, j); };
    auto bot = [&](int j, int k) { return m(2, j) * m(3, k) - m(2, k) * m(3, j); };
    return top(0, 1) * bot(2, 3) - top(0, 2) * bot(1, 3) + top(0, 3) * bot(1, 2) +
           top(1, 2) * bot(0, 3) - top(1, 3) * bot(0, 2) + top(2, 3) * bot(0, 1);
}

// Tr(m^k) by repeated multiplication, k >= 1.
inline cplx trace_power(const cmat4& m, int k) {
    if (k < 1) throw std::invalid_argument("trace_power: k must be positive");
    cmat4 p = m;
    for (int i = 1; i < k; ++i) p = p * m;
    return p.trace();
}

}  // namespace qent4

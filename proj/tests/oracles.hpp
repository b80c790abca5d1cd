#ifndef WBELL_TEST_ORACLES_HPP
#define WBELL_TEST_ORACLES_HPP

// Test-only oracles, independent of the implementation paths they check:
// characteristic-polynomial root bracketing for Hermitian spectra, direct
// index-summation partial traces, and the outer-product density.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "wbell/linalg.hpp"
#include "wbell/states.hpp"

namespace oracles {

using wbell::cplx;
using wbell::SquareMatrix;

/// det(A - x I) by Gaussian elimination with partial pivoting. For a
/// Hermitian A the result is real up to round-off.
inline double char_poly(const SquareMatrix& a, double x) {
    const int n = a.dim();
    std::vector<cplx> m(std::size_t(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m[std::size_t(r) * n + c] = a.at(r, c) - (r == c ? cplx(x) : cplx{});
    cplx det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[std::size_t(r) * n + col]) > std::abs(m[std::size_t(pivot) * n + col]))
                pivot = r;
        if (std::abs(m[std::size_t(pivot) * n + col]) == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = col; c < n; ++c)
                std::swap(m[std::size_t(pivot) * n + c], m[std::size_t(col) * n + c]);
            det = -det;
        }
        const cplx pv = m[std::size_t(col) * n + col];
        det *= pv;
        for (int r = col + 1; r < n; ++r) {
            const cplx f = m[std::size_t(r) * n + col] / pv;
            for (int c = col; c < n; ++c) m[std::size_t(r) * n + c] -= f * m[std::size_t(col) * n + c];
        }
    }
    return det.real();
}

/// Roots of det(A - x I) for Hermitian A, by sign-change bracketing on a
/// fine grid inside the Gershgorin bound followed by bisection. Finds every
/// odd-multiplicity root; meant for random matrices with simple spectra.
inline std::vector<double> char_poly_roots(const SquareMatrix& a, int grid = 4000,
                                           double tol = 1e-10) {
    double radius = 0.0;
    for (int r = 0; r < a.dim(); ++r) {
        double row = 0.0;
        for (int c = 0; c < a.dim(); ++c) row += std::abs(a.at(r, c));
        radius = std::max(radius, row);
    }
    radius += 1.0;
    std::vector<double> roots;
    double x0 = -radius, f0 = char_poly(a, x0);
    for (int k = 1; k <= grid; ++k) {
        const double x1 = -radius + 2.0 * radius * double(k) / grid;
        const double f1 = char_poly(a, x1);
        if (f0 == 0.0) roots.push_back(x0);
        if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = char_poly(a, mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    std::sort(roots.rbegin(), roots.rend());
    return roots;
}

/// Direct index-summation partial trace over explicit (q1, q2, q3) labels.
inline SquareMatrix partial_trace_direct(const SquareMatrix& rho8, int traced_qubit) {
    SquareMatrix out(4);
    const auto composite = [](int q1, int q2, int q3) { return 4 * q1 + 2 * q2 + q3; };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    cplx sum{};
                    for (int e = 0; e < 2; ++e) {
                        int row = 0, col = 0;
                        switch (traced_qubit) {
                            case 1: row = composite(e, a, b); col = composite(e, c, d); break;
                            case 2: row = composite(a, e, b); col = composite(c, e, d); break;
                            default: row = composite(a, b, e); col = composite(c, d, e); break;
                        }
                        sum += rho8.at(row, col);
                    }
                    out.at(2 * a + b, 2 * c + d) = sum;
                }
    return out;
}

/// Outer product |psi><psi| over an explicit 8-component vector.
inline SquareMatrix outer_product(const std::array<cplx, 8>& psi) {
    SquareMatrix rho(8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) rho.at(r, c) = psi[std::size_t(r)] * std::conj(psi[std::size_t(c)]);
    return rho;
}

inline std::array<cplx, 8> state_vector(const wbell::WClassState& s) {
    std::array<cplx, 8> psi{};
    for (int k = 0; k < 3; ++k) psi[std::size_t(s.basis_index(k))] = s.amp(k);
    return psi;
}

/// Pauli matrices for direct trace oracles.
inline SquareMatrix pauli(int k) {
    SquareMatrix m(2);
    if (k == 0) {
        m.at(0, 1) = 1.0;
        m.at(1, 0) = 1.0;
    } else if (k == 1) {
        m.at(0, 1) = cplx(0.0, -1.0);
        m.at(1, 0) = cplx(0.0, 1.0);
    } else {
        m.at(0, 0) = 1.0;
        m.at(1, 1) = -1.0;
    }
    return m;
}

/// Direct trace Tr(rho sigma_n x sigma_m), independent of the library path.
inline cplx pauli_trace(const SquareMatrix& rho4, int n, int m) {
    const SquareMatrix k = wbell::kron(pauli(n), pauli(m));
    cplx t{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t += rho4.at(r, c) * k.at(c, r);
    return t;
}

/// Deterministic random Hermitian matrix with entries of order one.
inline SquareMatrix random_hermitian(int dim, wbell::SplitMix64& g) {
    SquareMatrix a(dim);
    for (int r = 0; r < dim; ++r) {
        a.at(r, r) = 2.0 * g.next_unit() - 1.0;
        for (int c = r + 1; c < dim; ++c) {
            const cplx z(2.0 * g.next_unit() - 1.0, 2.0 * g.next_unit() - 1.0);
            a.at(r, c) = z;
            a.at(c, r) = std::conj(z);
        }
    }
    return a;
}

inline wbell::WClassState random_state(wbell::SplitMix64& g,
                                       wbell::ExcitationSector sector = wbell::ExcitationSector::Single) {
    return wbell::sample_one(g, sector);
}

inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
    return worst;
}

} // namespace oracles

#endif // WBELL_TEST_ORACLES_HPP

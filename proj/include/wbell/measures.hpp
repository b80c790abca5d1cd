#ifndef WBELL_MEASURES_HPP
#define WBELL_MEASURES_HPP

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "wbell/linalg.hpp"
#include "wbell/states.hpp"
#include "wbell/types.hpp"

namespace wbell {

/// Bell-CHSH is violated for M strictly above one; exact-boundary states
/// (product states give M = 1) classify as non-violating.
inline constexpr double kViolationThreshold = 1.0 + 1e-12;

inline bool violates(double m) { return m > kViolationThreshold; }

/// The tuple (M, C, N, E) for one qubit pair.
struct PairMeasures {
    double m = 0.0; // nonlocality parameter, [0, 2]
    double c = 0.0; // concurrence, [0, 1]
    double n = 0.0; // negativity, [0, 1]
    double e = 0.0; // linear entropy, [0, 1]
};

/// 3x3 Pauli correlation matrix t_nm = Tr(rho sigma_n x sigma_m).
struct CorrelationMatrix {
    std::array<std::array<double, 3>, 3> t{};
};

namespace detail {

inline const std::array<SquareMatrix, 3>& paulis() {
    static const std::array<SquareMatrix, 3> p = [] {
        SquareMatrix sx(2), sy(2), sz(2);
        sx.at(0, 1) = 1.0;
        sx.at(1, 0) = 1.0;
        sy.at(0, 1) = cplx(0.0, -1.0);
        sy.at(1, 0) = cplx(0.0, 1.0);
        sz.at(0, 0) = 1.0;
        sz.at(1, 1) = -1.0;
        return std::array<SquareMatrix, 3>{sx, sy, sz};
    }();
    return p;
}

inline const std::array<SquareMatrix, 9>& pauli_pairs() {
    static const std::array<SquareMatrix, 9> k = [] {
        const auto& p = paulis();
        return std::array<SquareMatrix, 9>{
            kron(p[0], p[0]), kron(p[0], p[1]), kron(p[0], p[2]),
            kron(p[1], p[0]), kron(p[1], p[1]), kron(p[1], p[2]),
            kron(p[2], p[0]), kron(p[2], p[1]), kron(p[2], p[2])};
    }();
    return k;
}

inline const SquareMatrix& spin_flip() {
    static const SquareMatrix yy = kron(paulis()[1], paulis()[1]);
    return yy;
}

} // namespace detail

inline CorrelationMatrix correlation_matrix(const SquareMatrix& rho) {
    if (rho.dim() != 4) throw validation_error("correlation_matrix expects a 4x4 matrix");
    validate_density(rho);
    CorrelationMatrix out;
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m) {
            const SquareMatrix& k = detail::pauli_pairs()[std::size_t(3 * n + m)];
            cplx t{};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) t += rho.at(r, c) * k.at(c, r);
            if (std::abs(t.imag()) >= 1e-12)
                throw numerical_error("correlation_matrix: imaginary residue signals an invalid state");
            if (std::abs(t.real()) > 1.0 + 1e-9)
                throw numerical_error("correlation_matrix: entry outside [-1, 1]");
            out.t[std::size_t(n)][std::size_t(m)] = t.real();
        }
    return out;
}

/// Horodecki criterion: sum of the two largest eigenvalues of U = T^T T.
inline double nonlocality_matrix_path(const SquareMatrix& rho) {
    const CorrelationMatrix tm = correlation_matrix(rho);
    SquareMatrix u(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += tm.t[std::size_t(k)][std::size_t(a)] * tm.t[std::size_t(k)][std::size_t(b)];
            u.at(a, b) = s;
        }
    const EigenResult eig = hermitian_eigenvalues(u);
    return eig.values[0] + eig.values[1];
}

/// Wootters concurrence from the spectrum of R = rho rho~, computed as the
/// Hermitian form sqrt(rho) rho~ sqrt(rho). The true spectrum of R for every
/// state in this family is {C^2, 0, 0, 0}; eigenvalues with |lambda| <= 1e-13
/// are clipped to zero so round-off does not leak through the square roots.
inline double concurrence_matrix_path(const SquareMatrix& rho) {
    if (rho.dim() != 4) throw validation_error("concurrence_matrix_path expects a 4x4 matrix");
    validate_density(rho);
    const SquareMatrix& yy = detail::spin_flip();
    const SquareMatrix tilde = matmul(matmul(yy, conjugate(rho)), yy);
    const SquareMatrix root = hermitian_sqrt(rho);
    const SquareMatrix s = matmul(matmul(root, tilde), root);
    const EigenResult eig = hermitian_eigenvalues(s);
    double c = 0.0;
    for (std::size_t l = 0; l < eig.values.size(); ++l) {
        double lam = eig.values[l];
        if (lam < -1e-10) throw numerical_error("concurrence: eigenvalue of R below -1e-10");
        lam = std::abs(lam) <= 1e-13 ? 0.0 : std::max(lam, 0.0);
        c += (l == 0 ? 1.0 : -1.0) * std::sqrt(lam);
    }
    return std::max(c, 0.0);
}

/// Negativity: -2 times the lowest eigenvalue of the partial transpose,
/// floored at zero.
inline double negativity_matrix_path(const SquareMatrix& rho) {
    if (rho.dim() != 4) throw validation_error("negativity_matrix_path expects a 4x4 matrix");
    validate_density(rho);
    const EigenResult eig = hermitian_eigenvalues(partial_transpose(rho, Subsystem::second));
    return std::max(0.0, -2.0 * eig.values.back());
}

/// Linear entropy (4/3)(1 - Tr rho^2), clamped to [0, 1].
inline double linear_entropy_matrix_path(const SquareMatrix& rho) {
    if (rho.dim() != 4) throw validation_error("linear_entropy_matrix_path expects a 4x4 matrix");
    validate_density(rho);
    double purity = 0.0;
    for (const cplx& z : rho.data()) purity += std::norm(z);
    const double e = (4.0 / 3.0) * (1.0 - purity);
    if (e < -1e-12 || e > 1.0 + 1e-12)
        throw numerical_error("linear_entropy: value outside [0, 1] beyond tolerance");
    return std::clamp(e, 0.0, 1.0);
}

inline double nonlocality_closed(const Probabilities& p, PairId pair) {
    const double ps = p.for_qubit(pair.spectator());
    const double x = p.for_qubit(pair.i);
    const double y = p.for_qubit(pair.j);
    const double d = ps - x - y;
    return std::max(d * d + 4.0 * x * y, 8.0 * x * y);
}

inline double concurrence_closed(const Probabilities& p, PairId pair) {
    return std::sqrt(4.0 * p.for_qubit(pair.i) * p.for_qubit(pair.j));
}

inline double negativity_closed(const Probabilities& p, PairId pair) {
    const double ps = p.for_qubit(pair.spectator());
    const double prod = p.for_qubit(pair.i) * p.for_qubit(pair.j);
    return std::sqrt(ps * ps + 4.0 * prod) - ps;
}

inline double linear_entropy_closed(const Probabilities& p, PairId pair) {
    const double x = p.for_qubit(pair.i);
    const double y = p.for_qubit(pair.j);
    return (8.0 / 3.0) * (-x * x + x - y * y + y - 2.0 * x * y);
}

inline PairMeasures pair_measures(const Probabilities& p, PairId pair) {
    return PairMeasures{nonlocality_closed(p, pair), concurrence_closed(p, pair),
                        negativity_closed(p, pair), linear_entropy_closed(p, pair)};
}

enum class CrossCheck { off, on };

namespace detail {

inline std::string triple_text(const Probabilities& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << p.a << ", " << p.b << ", " << p.c << ")";
    return os.str();
}

inline void check_measure_ranges(const PairMeasures& pm, const Probabilities& p) {
    const double tol = 1e-9;
    const bool ok = pm.m >= -tol && pm.m <= 2.0 + tol && pm.c >= -tol && pm.c <= 1.0 + tol &&
                    pm.n >= -tol && pm.n <= 1.0 + tol && pm.e >= -tol && pm.e <= 1.0 + tol &&
                    pm.n <= pm.c + tol;
    if (!ok)
        throw consistency_error("pair measures out of range for probabilities " + triple_text(p));
}

} // namespace detail

/// Closed-form measures for all three pairs, in the order (1,2), (1,3), (2,3).
/// With CrossCheck::on the matrix path is recomputed for every pair and any
/// disagreement beyond 1e-9 raises a consistency error naming the triple.
inline std::array<PairMeasures, 3> all_pairs(const WClassState& state,
                                             CrossCheck verify = CrossCheck::off) {
    const Probabilities p = probabilities(state);
    std::array<PairMeasures, 3> out;
    for (std::size_t k = 0; k < 3; ++k) {
        out[k] = pair_measures(p, all_pair_ids[k]);
        detail::check_measure_ranges(out[k], p);
    }
    if (verify == CrossCheck::on) {
        for (std::size_t k = 0; k < 3; ++k) {
            const SquareMatrix rho = reduce(state, all_pair_ids[k]);
            const PairMeasures mp{nonlocality_matrix_path(rho), concurrence_matrix_path(rho),
                                  negativity_matrix_path(rho), linear_entropy_matrix_path(rho)};
            const double gap = std::max({std::abs(mp.m - out[k].m), std::abs(mp.c - out[k].c),
                                         std::abs(mp.n - out[k].n), std::abs(mp.e - out[k].e)});
            if (gap > 1e-9)
                throw consistency_error("closed-form and matrix paths disagree on pair " +
                                        all_pair_ids[k].label() + " for probabilities " +
                                        detail::triple_text(p));
        }
    }
    return out;
}

} // namespace wbell

#endif // WBELL_MEASURES_HPP

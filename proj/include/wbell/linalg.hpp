#ifndef WBELL_LINALG_HPP
#define WBELL_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "wbell/types.hpp"

namespace wbell {

/// Dense complex square matrix, row-major. Dimensions are restricted to the
/// sizes this library actually works with: 2x2 and 4x4 density matrices,
/// 3x3 correlation matrices, 8x8 three-qubit density matrices.
class SquareMatrix {
public:
    explicit SquareMatrix(int dim) : dim_(checked_dim(dim)), a_(std::size_t(dim) * dim) {}

    static SquareMatrix identity(int dim) {
        SquareMatrix m(dim);
        for (int k = 0; k < dim; ++k) m.at(k, k) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& at(int r, int c) { return a_[std::size_t(r) * dim_ + c]; }
    const cplx& at(int r, int c) const { return a_[std::size_t(r) * dim_ + c]; }

    const std::vector<cplx>& data() const { return a_; }

private:
    static int checked_dim(int d) {
        if (d != 2 && d != 3 && d != 4 && d != 8)
            throw validation_error("SquareMatrix dimension must be one of {2,3,4,8}");
        return d;
    }

    int dim_;
    std::vector<cplx> a_;
};

inline bool entries_finite(const SquareMatrix& m) {
    for (const cplx& z : m.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

inline SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim() != b.dim()) throw validation_error("matmul: dimension mismatch");
    const int n = a.dim();
    SquareMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const cplx ark = a.at(r, k);
            if (ark == cplx{}) continue;
            for (int c = 0; c < n; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    return out;
}

inline SquareMatrix adjoint(const SquareMatrix& a) {
    const int n = a.dim();
    SquareMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at(r, c) = std::conj(a.at(c, r));
    return out;
}

inline SquareMatrix conjugate(const SquareMatrix& a) {
    const int n = a.dim();
    SquareMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at(r, c) = std::conj(a.at(r, c));
    return out;
}

inline cplx trace(const SquareMatrix& a) {
    cplx t{};
    for (int k = 0; k < a.dim(); ++k) t += a.at(k, k);
    return t;
}

/// Kronecker product; result dimension must stay within the supported set.
inline SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    SquareMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    out.at(i * nb + k, j * nb + l) = a.at(i, j) * b.at(k, l);
    return out;
}

inline double hermiticity_residual(const SquareMatrix& a) {
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            worst = std::max(worst, std::abs(a.at(r, c) - std::conj(a.at(c, r))));
    return worst;
}

/// Rejects matrices that are not a density matrix within `tol`:
/// non-finite entries, non-Hermitian, or trace away from one.
inline void validate_density(const SquareMatrix& rho, double tol = 1e-12) {
    if (!entries_finite(rho)) throw validation_error("density matrix has non-finite entries");
    if (hermiticity_residual(rho) > tol)
        throw validation_error("density matrix is not Hermitian within tolerance");
    if (std::abs(trace(rho) - cplx{1.0}) > tol)
        throw validation_error("density matrix trace differs from one beyond tolerance");
}

enum class Subsystem { first, second };

/// Reduced two-qubit state of a three-qubit density matrix, Eq.-(6) style:
/// traces out the given qubit (1-based, qubit 1 = leftmost ket label) and
/// returns the 4x4 matrix over the remaining qubits in ascending label order.
inline SquareMatrix partial_trace(const SquareMatrix& rho, int traced_qubit) {
    if (rho.dim() != 8) throw validation_error("partial_trace expects an 8x8 matrix");
    if (traced_qubit < 1 || traced_qubit > 3)
        throw validation_error("partial_trace: traced qubit must be 1, 2 or 3");
    validate_density(rho);

    // Composite index of |q1 q2 q3> is 4*q1 + 2*q2 + q3.
    const int stride = traced_qubit == 1 ? 4 : traced_qubit == 2 ? 2 : 1;
    const int keep_hi = traced_qubit == 1 ? 2 : 4;
    const int keep_lo = traced_qubit == 3 ? 2 : 1;

    SquareMatrix out(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    cplx sum{};
                    for (int e = 0; e < 2; ++e)
                        sum += rho.at(a * keep_hi + b * keep_lo + e * stride,
                                      c * keep_hi + d * keep_lo + e * stride);
                    out.at(2 * a + b, 2 * c + d) = sum;
                }
    return out;
}

/// Traces a 4x4 two-qubit matrix down to the kept tensor factor.
inline SquareMatrix partial_trace_pair(const SquareMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4) throw validation_error("partial_trace_pair expects a 4x4 matrix");
    SquareMatrix out(2);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
            cplx sum{};
            for (int e = 0; e < 2; ++e)
                sum += keep == Subsystem::first ? rho.at(2 * a + e, 2 * c + e)
                                                : rho.at(2 * e + a, 2 * e + c);
            out.at(a, c) = sum;
        }
    return out;
}

/// Transpose applied to one tensor factor of a 4x4 two-qubit matrix.
inline SquareMatrix partial_transpose(const SquareMatrix& rho, Subsystem subsystem) {
    if (rho.dim() != 4) throw validation_error("partial_transpose expects a 4x4 matrix");
    SquareMatrix out(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    if (subsystem == Subsystem::first)
                        out.at(2 * a + b, 2 * c + d) = rho.at(2 * c + b, 2 * a + d);
                    else
                        out.at(2 * a + b, 2 * c + d) = rho.at(2 * a + d, 2 * c + b);
                }
    return out;
}

struct EigenResult {
    std::vector<double> values; // sorted descending
    double residual = 0.0;      // max_k |A v_k - lambda_k v_k|_inf
};

namespace detail {

/// Eigen decomposition of a real symmetric matrix by cyclic Jacobi rotations.
/// `a` is row-major n x n and is consumed. Vectors come back column-major:
/// the k-th eigenvector is vectors[j*n + k], j = 0..n-1.
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<double> vectors;
    int n = 0;
};

inline double offdiagonal_norm(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q) s += a[std::size_t(p) * n + q] * a[std::size_t(p) * n + q];
    return std::sqrt(s);
}

inline SymmetricEigen jacobi_symmetric(std::vector<double> a, int n,
                                       double off_tol = 1e-13, int max_sweeps = 100) {
    std::vector<double> v(std::size_t(n) * n, 0.0);
    for (int k = 0; k < n; ++k) v[std::size_t(k) * n + k] = 1.0;

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiagonal_norm(a, n) < off_tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[std::size_t(p) * n + q];
                if (apq == 0.0) continue;
                const double app = a[std::size_t(p) * n + p];
                const double aqq = a[std::size_t(q) * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[std::size_t(k) * n + p];
                    const double akq = a[std::size_t(k) * n + q];
                    a[std::size_t(k) * n + p] = c * akp - s * akq;
                    a[std::size_t(k) * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[std::size_t(p) * n + k];
                    const double aqk = a[std::size_t(q) * n + k];
                    a[std::size_t(p) * n + k] = c * apk - s * aqk;
                    a[std::size_t(q) * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[std::size_t(k) * n + p];
                    const double vkq = v[std::size_t(k) * n + q];
                    v[std::size_t(k) * n + p] = c * vkp - s * vkq;
                    v[std::size_t(k) * n + q] = s * vkp + c * vkq;
                }
            }
    }
    if (!converged && offdiagonal_norm(a, n) >= off_tol)
        throw numerical_error("Jacobi eigensolver did not converge within 100 sweeps");

    SymmetricEigen res;
    res.n = n;
    res.values.resize(n);
    for (int k = 0; k < n; ++k) res.values[std::size_t(k)] = a[std::size_t(k) * n + k];

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return res.values[x] > res.values[y]; });
    std::vector<double> sv(n), svec(std::size_t(n) * n);
    for (int k = 0; k < n; ++k) {
        sv[k] = res.values[order[k]];
        for (int j = 0; j < n; ++j) svec[std::size_t(j) * n + k] = v[std::size_t(j) * n + order[k]];
    }
    res.values = std::move(sv);
    res.vectors = std::move(svec);
    return res;
}

/// Residual max_k |A v_k - lambda_k v_k|_inf for a real symmetric eigensystem.
inline double symmetric_residual(const std::vector<double>& a, const SymmetricEigen& e) {
    const int n = e.n;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < n; ++r) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c) acc += a[std::size_t(r) * n + c] * e.vectors[std::size_t(c) * n + k];
            worst = std::max(worst, std::abs(acc - e.values[k] * e.vectors[std::size_t(r) * n + k]));
        }
    }
    return worst;
}

inline bool is_real(const SquareMatrix& m) {
    for (const cplx& z : m.data())
        if (z.imag() != 0.0) return false;
    return true;
}

inline std::vector<double> real_part_flat(const SquareMatrix& m) {
    std::vector<double> a(std::size_t(m.dim()) * m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) a[std::size_t(r) * m.dim() + c] = m.at(r, c).real();
    return a;
}

/// Real symmetric embedding [[Re, -Im], [Im, Re]] of a complex Hermitian matrix.
inline std::vector<double> embed_hermitian(const SquareMatrix& m) {
    const int n = m.dim();
    std::vector<double> a(std::size_t(2 * n) * (2 * n), 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const cplx z = m.at(r, c);
            a[std::size_t(r) * 2 * n + c] = z.real();
            a[std::size_t(r) * 2 * n + (c + n)] = -z.imag();
            a[std::size_t(r + n) * 2 * n + c] = z.imag();
            a[std::size_t(r + n) * 2 * n + (c + n)] = z.real();
        }
    return a;
}

struct HermitianEigenData {
    std::vector<double> flat; // the matrix Jacobi ran on
    SymmetricEigen eig;
    bool embedded = false;    // eigenvalues doubled when true
};

inline HermitianEigenData hermitian_eigensystem(const SquareMatrix& a, double herm_tol = 1e-12) {
    if (!entries_finite(a)) throw validation_error("eigensolver input has non-finite entries");
    if (hermiticity_residual(a) > herm_tol)
        throw validation_error("eigensolver input is not Hermitian within tolerance");
    HermitianEigenData d;
    if (is_real(a)) {
        d.flat = real_part_flat(a);
        d.eig = jacobi_symmetric(d.flat, a.dim());
    } else {
        d.flat = embed_hermitian(a);
        d.eig = jacobi_symmetric(d.flat, 2 * a.dim());
        d.embedded = true;
    }
    return d;
}

} // namespace detail

/// All eigenvalues of a Hermitian matrix, descending. Complex input is
/// embedded as a 2n x 2n real symmetric matrix (doubled spectrum, every
/// second value kept); real symmetric input is solved directly.
inline EigenResult hermitian_eigenvalues(const SquareMatrix& a) {
    const auto d = detail::hermitian_eigensystem(a);
    EigenResult res;
    res.residual = detail::symmetric_residual(d.flat, d.eig);
    if (d.embedded) {
        for (std::size_t k = 0; k < d.eig.values.size(); k += 2) res.values.push_back(d.eig.values[k]);
    } else {
        res.values = d.eig.values;
    }
    if (res.residual > 1e-10)
        throw numerical_error("eigensolver residual above 1e-10");
    return res;
}

/// Hermitian square root via the spectral decomposition. Eigenvalues below
/// -1e-10 are an error; eigenvalues with |lambda| <= 1e-13 are treated as
/// exact zeros so that rank-deficient inputs do not leak square roots of
/// round-off noise into the null space.
inline SquareMatrix hermitian_sqrt(const SquareMatrix& a) {
    const auto d = detail::hermitian_eigensystem(a);
    const int m = d.eig.n;
    std::vector<double> w(std::size_t(m) * m, 0.0);
    for (int k = 0; k < m; ++k) {
        double lam = d.eig.values[k];
        if (lam < -1e-10) throw numerical_error("hermitian_sqrt: negative eigenvalue beyond tolerance");
        lam = std::abs(lam) <= 1e-13 ? 0.0 : std::max(lam, 0.0);
        const double root = std::sqrt(lam);
        if (root == 0.0) continue;
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                w[std::size_t(r) * m + c] += root * d.eig.vectors[std::size_t(r) * m + k] *
                                             d.eig.vectors[std::size_t(c) * m + k];
    }
    const int n = a.dim();
    SquareMatrix out(n);
    if (d.embedded) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out.at(r, c) = cplx(w[std::size_t(r) * m + c], w[std::size_t(r + n) * m + c]);
    } else {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out.at(r, c) = w[std::size_t(r) * m + c];
    }
    return out;
}

} // namespace wbell

#endif // WBELL_LINALG_HPP

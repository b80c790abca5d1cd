#ifndef WBELL_BOUNDARIES_HPP
#define WBELL_BOUNDARIES_HPP

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "wbell/linalg.hpp"
#include "wbell/states.hpp"
#include "wbell/types.hpp"

namespace wbell {

/// Threshold constants of the region diagrams.
namespace thresholds {

/// Concurrence above which every state violates Bell-CHSH.
inline const double c_star = 1.0 / std::sqrt(2.0);
/// Linear entropy at and above which no state violates.
inline const double e_star = 4.0 * (std::sqrt(2.0) - 1.0) / 3.0;
/// Validity endpoint of the lower nonlocality boundary.
inline const double m_jk_star = (1.0 - std::sqrt(8.0 * std::sqrt(2.0) - 11.0)) / 2.0;
/// Negativity of the maximally mixed boundary state at c_star.
inline const double n_one = 1.0 / std::sqrt(2.0) - 1.0 + std::sqrt(2.0 - std::sqrt(2.0));
/// Negativity where the violation boundary meets the diagonal region.
inline const double n_two =
    0.5 * (1.0 / std::sqrt(2.0) - 1.0 + std::sqrt(3.5 - std::sqrt(2.0)));

} // namespace thresholds

/// The complementary nonlocality parameter: M_ij = 2 - M_jk on the upper
/// boundary, attained when M_jk = M_ik and the reduced pair state is pure.
inline double m_complement(double m_jk) {
    if (!(m_jk >= 0.0 && m_jk <= 2.0)) throw validation_error("m_complement: argument outside [0, 2]");
    return 2.0 - m_jk;
}

/// Probability triples whose pair (1,2) reduction is pure with the two
/// complementary parameters equal to m_jk: the spectator weight vanishes and
/// the remaining weights split as (1 +- sqrt(m_jk))/2. Both orderings.
inline std::array<Probabilities, 2> pure_reduced_probs(double m_jk) {
    if (!(m_jk >= 0.0 && m_jk <= 1.0))
        throw validation_error("pure_reduced_probs: argument outside [0, 1]");
    const double r = std::sqrt(m_jk);
    const double hi = 0.5 * (1.0 + r);
    const double lo = 1.0 - hi;
    return {Probabilities(0.0, hi, lo), Probabilities(0.0, lo, hi)};
}

/// Lower boundary of the attainable (M_jk, M_ij) region, valid for
/// M_jk < m_jk_star. Literal transcription of the nested-radical formula.
inline double m_lower_boundary(double m_jk) {
    if (!(m_jk >= 0.0 && m_jk <= thresholds::m_jk_star + 1e-12))
        throw validation_error("m_lower_boundary: argument outside [0, m_jk_star)");
    const double s = std::sqrt(2.0 * m_jk);
    const double q = std::sqrt(4.0 + 4.0 * s - 6.0 * m_jk);
    const double inner = 2.0 - q +
                         (3.0 * std::sqrt(2.0 + 2.0 * s - 3.0 * m_jk) - 2.0 * std::sqrt(2.0)) *
                             std::sqrt(m_jk) +
                         3.0 * m_jk;
    return (2.0 - q + s) * (q + 6.0 - s - 2.0 * std::sqrt(std::max(inner, 0.0))) / 16.0;
}

/// Lowest negativity still violating at a given concurrence (the solid
/// black boundary of the (C, N) diagram, valid below c_star).
inline double negativity_violation_lower(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw validation_error("negativity bound: concurrence outside [0, 1]");
    const double g = std::sqrt(std::max(1.0 - c * c, 0.0));
    return 0.5 * (-1.0 + g + std::sqrt(2.0 + 3.0 * c * c - 2.0 * g));
}

/// Minimal negativity attainable at fixed concurrence (Werner-state curve).
inline double verstraete_min_negativity(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw validation_error("verstraete_min_negativity: concurrence outside [0, 1]");
    return std::sqrt((1.0 - c) * (1.0 - c) + c * c) - (1.0 - c);
}

/// Negativity interval occupied by violating states at fixed concurrence.
/// Below c_star the interval is open at its lower end; above it the
/// Verstraete minimum itself violates.
struct NegativityInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_open = true;
};

inline NegativityInterval negativity_violation_bounds(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw validation_error("negativity_violation_bounds: concurrence outside [0, 1]");
    if (c <= thresholds::c_star) return {negativity_violation_lower(c), c, true};
    return {verstraete_min_negativity(c), c, false};
}

/// Entropy bounds at fixed concurrence: the violation-region bound (strict
/// below c_star, non-strict above) and the maximal-mixedness reference curve
/// (8/3)(c - c^2), meaningful for c >= 1/2.
struct EntropyConcurrenceBounds {
    double violation_bound = 0.0;
    bool strict = true;
    double max_entropy = 0.0;
    bool max_entropy_valid = false;
};

inline EntropyConcurrenceBounds entropy_bounds_vs_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw validation_error("entropy_bounds_vs_concurrence: concurrence outside [0, 1]");
    EntropyConcurrenceBounds out;
    out.max_entropy = (8.0 / 3.0) * (c - c * c);
    out.max_entropy_valid = c >= 0.5;
    if (c <= thresholds::c_star) {
        out.violation_bound = (2.0 / 3.0) * c * c;
        out.strict = true;
    } else {
        out.violation_bound = out.max_entropy;
        out.strict = false;
    }
    return out;
}

/// Entropy of the M = 1 boundary states at fixed negativity (solid black
/// curve of the (N, E) diagram). Requires n <= 2/3 for a real radicand.
inline double entropy_vs_negativity_m1(double n) {
    if (!(n >= 0.0 && n <= 2.0 / 3.0 + 1e-12))
        throw validation_error("entropy_vs_negativity_m1: negativity outside [0, 2/3]");
    const double rad = std::max(-(2.0 + n) * (-2.0 + 3.0 * n), 0.0);
    return n * (2.0 + n - std::sqrt(rad)) / 3.0;
}

/// Entropy of the states with concurrence exactly c_star at fixed
/// negativity (dot-dashed curve of the (N, E) diagram). Requires n > 0.
inline double entropy_vs_negativity_c_half(double n) {
    if (!(n > 0.0)) throw validation_error("entropy_vs_negativity_c_half: negativity must be positive");
    return (1.0 - 2.0 * n * n) * (-1.0 + 4.0 * n + 2.0 * n * n) / (6.0 * n * n);
}

/// Both (N, E) boundary curve values at once; callers pick per the region
/// logic. The M = 1 branch needs n <= 2/3, the c_star branch n > 0.
struct EntropyNegativityCurves {
    double m1_branch = 0.0;
    double c_star_branch = 0.0;
};

inline EntropyNegativityCurves entropy_boundary_vs_negativity(double n) {
    return {entropy_vs_negativity_m1(n), entropy_vs_negativity_c_half(n)};
}

/// Maximal entropy attainable at fixed negativity (blue dashed curve of the
/// (N, E) diagram; also the outer bound of the last region branch).
inline double entropy_max_vs_negativity(double n) {
    if (!(n >= 0.0 && n <= 1.0))
        throw validation_error("entropy_max_vs_negativity: negativity outside [0, 1]");
    const double r = std::sqrt(2.0 * (n + n * n));
    return -8.0 * (-1.0 - n + r) * (-n + r) / 3.0;
}

enum class RegionVerdict { violating, fulfilling, boundary };

/// Piecewise region classifier in the (N, E) plane. The middle branch holds
/// on [n_one, n_two] (the printed interval order is empty; the scan resolves
/// it this way). Exact-boundary hits within 1e-12 are tagged as boundary.
inline RegionVerdict violation_region_vs_negativity(double n, double e) {
    if (!(n >= 0.0 && n <= 1.0 && e >= 0.0 && e <= 1.0))
        throw validation_error("violation_region_vs_negativity: arguments outside [0, 1]");
    const double tol = 1e-12;
    const auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };
    if (n < thresholds::n_one) {
        const double b = entropy_vs_negativity_m1(n);
        if (near(e, b)) return RegionVerdict::boundary;
        return e < b ? RegionVerdict::violating : RegionVerdict::fulfilling;
    }
    if (n <= thresholds::n_two) {
        const double b26 = entropy_vs_negativity_m1(n);
        const double b27 = entropy_vs_negativity_c_half(n);
        const double bmax = entropy_max_vs_negativity(n);
        if (near(e, b26) || near(e, b27)) return RegionVerdict::boundary;
        if (e < b26 || (e > b27 && e <= bmax + tol)) return RegionVerdict::violating;
        return RegionVerdict::fulfilling;
    }
    const double bmax = entropy_max_vs_negativity(n);
    return e <= bmax + tol ? RegionVerdict::violating : RegionVerdict::fulfilling;
}

/// Envelope of the (E, M) diagram: the highest nonlocality parameter
/// reachable at fixed linear entropy. Domain [0, 2/3].
inline double m_max_vs_entropy(double e) {
    if (!(e >= 0.0 && e <= 2.0 / 3.0 + 1e-12))
        throw validation_error("m_max_vs_entropy: entropy outside [0, 2/3]");
    const double root = std::sqrt(std::max(4.0 - 6.0 * e, 0.0));
    return (2.0 + root) * (2.0 + root) / 8.0;
}

/// The envelope-attaining two-qubit family and its linear entropy. The
/// envelope is reached on the alpha in [1/2, 1] branch, which spans the full
/// entropy range [0, 2/3].
struct WernerFamily {
    SquareMatrix rho;
    double linear_entropy = 0.0;
};

inline WernerFamily werner_like_family(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw validation_error("werner_like_family: alpha outside [0, 1]");
    SquareMatrix rho(4);
    rho.at(1, 1) = alpha / 2.0;
    rho.at(1, 2) = alpha / 2.0;
    rho.at(2, 1) = alpha / 2.0;
    rho.at(2, 2) = alpha / 2.0;
    rho.at(3, 3) = 1.0 - alpha;
    return {rho, (8.0 / 3.0) * (alpha - alpha * alpha)};
}

inline double m_sum_surface(double m12, double m13, double m23) { return m12 + m13 + m23; }

enum class CurveStyle { solid, dot_dashed, dashed };

/// A named analytic curve with its validity interval, for plotting and the
/// `boundary` CLI subcommand.
struct BoundaryCurve {
    std::string name;
    double x0 = 0.0;
    double x1 = 1.0;
    CurveStyle style = CurveStyle::solid;
    std::function<double(double)> eval;
};

inline const std::vector<BoundaryCurve>& boundary_curves() {
    static const std::vector<BoundaryCurve> curves = [] {
        using namespace thresholds;
        const double root6 = std::sqrt(6.0);
        std::vector<BoundaryCurve> v;
        v.push_back({"m_complement", 0.0, 2.0, CurveStyle::solid, m_complement});
        v.push_back({"m_lower_boundary", 0.0, m_jk_star, CurveStyle::dot_dashed, m_lower_boundary});
        v.push_back({"negativity_violation_lower", 0.0, c_star, CurveStyle::solid,
                     negativity_violation_lower});
        v.push_back({"verstraete_min_negativity", 0.0, 1.0, CurveStyle::dashed,
                     verstraete_min_negativity});
        v.push_back({"negativity_upper_diagonal", 0.0, 1.0, CurveStyle::dashed,
                     [](double c) { return c; }});
        v.push_back({"entropy_violation_vs_concurrence", 0.0, c_star, CurveStyle::solid,
                     [](double c) { return (2.0 / 3.0) * c * c; }});
        v.push_back({"entropy_max_vs_concurrence", 0.5, 1.0, CurveStyle::dashed,
                     [](double c) { return (8.0 / 3.0) * (c - c * c); }});
        v.push_back({"entropy_vs_negativity_m1", 0.0, 2.0 / 3.0, CurveStyle::solid,
                     entropy_vs_negativity_m1});
        v.push_back({"entropy_vs_negativity_c_half", (root6 - 2.0) / 2.0, c_star,
                     CurveStyle::dot_dashed, entropy_vs_negativity_c_half});
        v.push_back({"entropy_max_vs_negativity", 0.0, 1.0, CurveStyle::dashed,
                     entropy_max_vs_negativity});
        v.push_back({"m_max_vs_entropy", 0.0, 2.0 / 3.0, CurveStyle::solid, m_max_vs_entropy});
        return v;
    }();
    return curves;
}

inline const BoundaryCurve* find_curve(const std::string& name) {
    for (const BoundaryCurve& c : boundary_curves())
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace wbell

#endif // WBELL_BOUNDARIES_HPP

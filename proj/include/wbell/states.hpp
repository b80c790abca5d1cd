#ifndef WBELL_STATES_HPP
#define WBELL_STATES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include "wbell/linalg.hpp"
#include "wbell/types.hpp"

namespace wbell {

/// Which W-class family a state lives in. Single excitation spans
/// {|001>, |010>, |100>}, double excitation spans {|011>, |101>, |110>}.
enum class ExcitationSector { Single, Double };

/// Probability triple in the duality-invariant order: `a` is the weight of
/// the basis state whose odd qubit is qubit 3 (P001 for Single, P110 for
/// Double), `b` of qubit 2 (P010 / P101), `c` of qubit 1 (P100 / P011).
/// With this ordering every closed-form measure is sector-independent.
struct Probabilities {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    Probabilities() = default;
    Probabilities(double pa, double pb, double pc) : a(pa), b(pb), c(pc) {
        const bool in_range = a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0 && c >= 0.0 && c <= 1.0;
        if (!in_range || std::abs(a + b + c - 1.0) > 1e-12)
            throw validation_error("Probabilities must lie in [0,1] and sum to one");
    }

    /// Probability of the basis state whose odd qubit is `qubit`.
    double for_qubit(int qubit) const { return qubit == 1 ? c : qubit == 2 ? b : a; }
};

/// Pure three-qubit W-class state. Amplitudes are stored in the written
/// order of the defining superposition: (C001, C010, C100) for Single,
/// (C011, C101, C110) for Double.
class WClassState {
public:
    ExcitationSector sector() const { return sector_; }
    const std::array<cplx, 3>& amps() const { return amps_; }
    cplx amp(int k) const { return amps_[std::size_t(k)]; }

    /// Basis index (0..7) of the k-th stored amplitude.
    int basis_index(int k) const {
        static constexpr int single_idx[3] = {1, 2, 4}; // |001>, |010>, |100>
        static constexpr int double_idx[3] = {3, 5, 6}; // |011>, |101>, |110>
        return sector_ == ExcitationSector::Single ? single_idx[k] : double_idx[k];
    }

    friend WClassState make_state(const std::array<cplx, 3>&, ExcitationSector, bool);

private:
    WClassState(const std::array<cplx, 3>& amps, ExcitationSector sector)
        : amps_(amps), sector_(sector) {}

    std::array<cplx, 3> amps_;
    ExcitationSector sector_;
};

/// Builds a normalized W-class state. A zero amplitude vector is rejected;
/// without `renormalize`, a norm deviating from one by more than 1e-12 is
/// rejected as well.
inline WClassState make_state(const std::array<cplx, 3>& amps, ExcitationSector sector,
                              bool renormalize = false) {
    double norm2 = 0.0;
    for (const cplx& z : amps) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw validation_error("make_state: non-finite amplitude");
        norm2 += std::norm(z);
    }
    if (norm2 == 0.0) throw validation_error("make_state: zero amplitude vector is not a state");
    if (!renormalize) {
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            throw validation_error("make_state: amplitudes are not normalized (pass renormalize)");
        return WClassState(amps, sector);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    return WClassState({amps[0] * inv, amps[1] * inv, amps[2] * inv}, sector);
}

inline Probabilities probabilities(const WClassState& s) {
    const double p0 = std::norm(s.amp(0));
    const double p1 = std::norm(s.amp(1));
    const double p2 = std::norm(s.amp(2));
    // Double sector: stored order is (C011, C101, C110) whose odd qubits are
    // (1, 2, 3); the duality-invariant triple is therefore reversed.
    if (s.sector() == ExcitationSector::Single) return Probabilities(p0, p1, p2);
    return Probabilities(p2, p1, p0);
}

/// rho = |psi><psi| on the full 8-dimensional space, basis |000>..|111>.
inline SquareMatrix to_density(const WClassState& s) {
    std::array<cplx, 8> psi{};
    for (int k = 0; k < 3; ++k) psi[std::size_t(s.basis_index(k))] = s.amp(k);
    SquareMatrix rho(8);
    for (int r = 0; r < 8; ++r) {
        if (psi[std::size_t(r)] == cplx{}) continue;
        for (int c = 0; c < 8; ++c) rho.at(r, c) = psi[std::size_t(r)] * std::conj(psi[std::size_t(c)]);
    }
    return rho;
}

/// Reduced state of the chosen qubit pair, via the full partial trace.
inline SquareMatrix reduce(const WClassState& s, PairId pair) {
    return partial_trace(to_density(s), pair.spectator());
}

/// Single-qubit reduction (2x2), used by the CKW identity check.
inline SquareMatrix reduce_single(const WClassState& s, int qubit) {
    if (qubit < 1 || qubit > 3) throw validation_error("reduce_single: qubit must be 1, 2 or 3");
    const PairId pair = qubit == 3 ? pair13 : PairId::of(qubit, 3);
    const Subsystem keep = qubit == pair.i ? Subsystem::first : Subsystem::second;
    return partial_trace_pair(reduce(s, pair), keep);
}

/// Mirror map between the two excitation sectors: every basis label is
/// bit-flipped (|001> <-> |110>, ...), amplitudes ride along. Probabilities
/// and, downstream, all pair measures are preserved; involutive.
inline WClassState dual_state(const WClassState& s) {
    const ExcitationSector flipped = s.sector() == ExcitationSector::Single
                                         ? ExcitationSector::Double
                                         : ExcitationSector::Single;
    return make_state({s.amp(2), s.amp(1), s.amp(0)}, flipped, false);
}

/// SplitMix64: tiny, fast, reproducible uniform generator.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
};

/// States per sampling chunk. Chunked seeding keeps parallel scans
/// deterministic for any worker count.
inline constexpr std::uint64_t kSampleChunk = 8192;

inline std::uint64_t derive_chunk_seed(RngSeed seed, std::uint64_t chunk) {
    return SplitMix64(seed.value ^ chunk).next();
}

/// One state from the generator: probabilities uniform on the 2-simplex
/// (sorted-uniform spacings), then three independent phases on [0, 2pi).
/// Consumes exactly five uniforms in a fixed order.
inline WClassState sample_one(SplitMix64& g, ExcitationSector sector) {
    const double u1 = g.next_unit();
    const double u2 = g.next_unit();
    const double lo = std::min(u1, u2);
    const double hi = std::max(u1, u2);
    const Probabilities p(lo, hi - lo, 1.0 - hi);
    const double two_pi = 6.283185307179586476925287;
    std::array<cplx, 3> amps;
    for (int k = 0; k < 3; ++k) {
        const double phi = two_pi * g.next_unit();
        amps[std::size_t(k)] = cplx(std::cos(phi), std::sin(phi));
    }
    // Keep the duality-invariant probability triple identical across sectors.
    const double roots[3] = {std::sqrt(p.a), std::sqrt(p.b), std::sqrt(p.c)};
    if (sector == ExcitationSector::Single) {
        amps[0] *= roots[0];
        amps[1] *= roots[1];
        amps[2] *= roots[2];
    } else {
        amps[0] *= roots[2];
        amps[1] *= roots[1];
        amps[2] *= roots[0];
    }
    return make_state(amps, sector, true);
}

/// Deterministic stream of `n` sampled states; index passed to the sink.
inline void sample_states(std::uint64_t n, RngSeed seed, ExcitationSector sector,
                          const std::function<void(std::uint64_t, const WClassState&)>& sink) {
    for (std::uint64_t chunk = 0; chunk * kSampleChunk < n; ++chunk) {
        SplitMix64 g(derive_chunk_seed(seed, chunk));
        const std::uint64_t begin = chunk * kSampleChunk;
        const std::uint64_t end = std::min(n, begin + kSampleChunk);
        for (std::uint64_t i = begin; i < end; ++i) sink(i, sample_one(g, sector));
    }
}

} // namespace wbell

#endif // WBELL_STATES_HPP

#ifndef WBELL_TYPES_HPP
#define WBELL_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wbell {

using cplx = std::complex<double>;

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Rejected input: contract or invariant violated by the caller.
class validation_error : public error {
public:
    using error::error;
};

/// A numerical procedure failed to meet its accuracy contract.
class numerical_error : public error {
public:
    using error::error;
};

/// Two independent computation routes disagree beyond tolerance.
class consistency_error : public error {
public:
    using error::error;
};

/// File I/O failure, message carries the offending path.
class io_error : public error {
public:
    using error::error;
};

/// Unordered qubit pair out of {1,2,3}, stored canonically with i < j.
struct PairId {
    int i;
    int j;

    static PairId of(int a, int b) {
        if (a == b || a < 1 || a > 3 || b < 1 || b > 3)
            throw validation_error("PairId requires two distinct qubit labels from {1,2,3}");
        return a < b ? PairId{a, b} : PairId{b, a};
    }

    int spectator() const { return 6 - i - j; }

    std::string label() const { return std::to_string(i) + std::to_string(j); }

    friend bool operator==(PairId a, PairId b) { return a.i == b.i && a.j == b.j; }
};

inline constexpr PairId pair12{1, 2};
inline constexpr PairId pair13{1, 3};
inline constexpr PairId pair23{2, 3};
inline constexpr PairId all_pair_ids[3] = {pair12, pair13, pair23};

struct RngSeed {
    std::uint64_t value = 0;
};

} // namespace wbell

#endif // WBELL_TYPES_HPP

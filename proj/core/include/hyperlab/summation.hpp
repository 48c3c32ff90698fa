// summation.hpp
// Deterministic pairwise summation with O(log n) state, for quadrature
// accumulation. The reduction tree depends only on the order and count of
// the added terms, never on thread scheduling.
#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

namespace hyperlab {

// Streaming pairwise summation: partial sums are merged like a binary
// counter, so adding n terms performs the same reduction tree as the
// textbook recursive pairwise sum.
class PairwiseAccumulator {
public:
    void add(double x) {
        std::uint64_t c = count_;
        std::size_t level = 0;
        while (c & 1u) {
            x += partial_[level];
            c >>= 1;
            ++level;
        }
        partial_[level] = x;
        ++count_;
    }

    double sum() const {
        double total = 0.0;
        std::uint64_t c = count_;
        for (std::size_t level = 0; c != 0; ++level, c >>= 1) {
            if (c & 1u) total += partial_[level];
        }
        return total;
    }

    std::uint64_t count() const { return count_; }

    void reset() { count_ = 0; }

private:
    std::array<double, 64> partial_{};
    std::uint64_t count_ = 0;
};

// Running maximum of |x| (or of x when signed=false semantics not needed).
class MaxTracker {
public:
    void add(double x) {
        if (x > value_) value_ = x;
    }
    void add_abs(double x) { add(x < 0 ? -x : x); }
    double value() const { return value_; }

private:
    double value_ = 0.0;
};

} // namespace hyperlab

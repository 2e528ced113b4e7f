#pragma once

#include <vector>

#include "gcl/error.hpp"
#include "gcl/rational.hpp"

namespace gcl {

// Nested subspace dimensions 0 < n_1 < ... < n_r < n of a partial flag in C^n.
struct FlagShape {
    std::vector<int> steps;  // n_1 .. n_r
    int n = 0;

    int rank() const { return static_cast<int>(steps.size()); }

    // n_j under the conventions n_0 = 0 and n_{r+1} = n.
    int step(int j) const {
        if (j <= 0) return 0;
        if (j > rank()) return n;
        return steps[static_cast<std::size_t>(j - 1)];
    }

    bool operator==(const FlagShape& o) const { return n == o.n && steps == o.steps; }
};

inline FlagShape make_shape(std::vector<int> steps, int n) {
    // r = 0 or n = 1 would make the polytope a point; rejected up front.
    if (steps.empty()) throw InputError("shape: at least one step required");
    int prev = 0;
    for (int s : steps) {
        if (s <= prev) throw InputError("shape: steps must be strictly increasing and positive");
        prev = s;
    }
    if (prev >= n) throw InputError("shape: last step must be < n");
    return FlagShape{std::move(steps), n};
}

// Non-increasing eigenvalue list; positions of strict drops define the shape.
struct Spectrum {
    std::vector<Rational> values;  // lambda_1 >= ... >= lambda_n
    FlagShape shape;

    int n() const { return static_cast<int>(values.size()); }
};

inline Spectrum make_spectrum(std::vector<Rational> values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw InputError("spectrum: need at least two entries");
    std::vector<int> steps;
    for (int i = 0; i + 1 < n; ++i) {
        if (values[i] < values[i + 1]) throw InputError("spectrum: entries must be non-increasing");
        if (values[i] > values[i + 1]) steps.push_back(i + 1);
    }
    if (steps.empty()) throw InputError("spectrum: need at least two distinct values");
    FlagShape shape = make_shape(std::move(steps), n);
    return Spectrum{std::move(values), std::move(shape)};
}

}  // namespace gcl

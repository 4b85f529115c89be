#pragma once

// Shared helpers for the test suites: deterministic random data that is stable
// across platforms (raw engine draws only, no std::distributions).

#include <random>
#include <vector>

#include "gptlab/linalg.hpp"

namespace gptlab::testing {

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    // Uniform in [lo, hi], inclusive.
    long integer(long lo, long hi) {
        return lo + static_cast<long>(engine_() % static_cast<uint64_t>(hi - lo + 1));
    }

    Rat rational(long max_abs_num = 5, long max_den = 4) {
        long den = integer(1, max_den);
        long num = integer(-max_abs_num, max_abs_num);
        return make_rat(num, den);
    }

    // Random point of the standard simplex with rational coordinates.
    QVec simplex_point(int n, long grid = 12) {
        std::vector<long> cuts;
        for (int i = 0; i < n - 1; ++i) cuts.push_back(integer(0, grid));
        cuts.push_back(0);
        cuts.push_back(grid);
        std::sort(cuts.begin(), cuts.end());
        QVec x(n);
        for (int i = 0; i < n; ++i) x(i) = make_rat(cuts[static_cast<size_t>(i + 1)] - cuts[static_cast<size_t>(i)], grid);
        return x;
    }

    QVec integer_vec(int dim, long lo, long hi) {
        QVec v(dim);
        for (int i = 0; i < dim; ++i) v(i) = integer(lo, hi);
        return v;
    }

    uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace gptlab::testing

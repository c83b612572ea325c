#pragma once

#include <random>

#include "gquench/dynamics.hpp"

namespace gquench::testing {

inline std::mt19937& rng() {
    static std::mt19937 engine(987654321u);
    return engine;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Stiffness drawn from eigenfrequencies in [0.1, 5], always valid.
inline StiffnessParams random_stiffness() {
    return stiffness_from_frequencies(uniform(0.1, 5.0), uniform(0.1, 5.0));
}

inline Mat4 random_symmetric() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            m(i, j) = m(j, i) = uniform(-2.0, 2.0);
        }
    }
    return m;
}

} // namespace gquench::testing

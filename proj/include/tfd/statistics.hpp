#pragma once

#include <complex>

namespace tfd {

using cd = std::complex<double>;

enum class Statistics { Boson, Fermion };

// sigma = +1 for bosons, -1 for fermions.
constexpr int sigma(Statistics s) { return s == Statistics::Boson ? +1 : -1; }

// Principal square root of sigma: 1 for bosons, i for fermions.
inline cd sqrt_sigma(Statistics s) {
    return s == Statistics::Boson ? cd(1.0, 0.0) : cd(0.0, 1.0);
}

// sigma^k for integer k (k may be negative; sigma^2 = 1).
constexpr int sigma_pow(Statistics s, long k) {
    if (s == Statistics::Boson) return 1;
    return (k % 2 == 0) ? 1 : -1;
}

// (sqrt(sigma))^k with k >= 0, reduced mod 4 for fermions (i^4 = 1).
inline cd sqrt_sigma_pow(Statistics s, long k) {
    if (s == Statistics::Boson) return cd(1.0, 0.0);
    switch (((k % 4) + 4) % 4) {
        case 0: return cd(1.0, 0.0);
        case 1: return cd(0.0, 1.0);
        case 2: return cd(-1.0, 0.0);
        default: return cd(0.0, -1.0);
    }
}

}  // namespace tfd

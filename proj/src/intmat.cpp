#include "birkhoff/intmat.hpp"

#include <cmath>
#include <vector>

namespace birkhoff {

// rho(A) = lim ||A^(2^k)||^(1/2^k); repeated squaring with rescaling is
// indifferent to complex eigenvalue pairs, unlike plain power iteration.
double spectral_radius(const IntMat& a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 0.0;
    std::vector<std::vector<double>> b(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = double(a[i][j]);

    // With B_{k+1} = B_k^2 / ||B_k||:  ||A^(2^k)||^(1/2^k)
    //   = exp(sum_{i<k} log||B_i|| / 2^(i+1)  +  log||B_k|| / 2^k).
    double acc = 0.0;
    double weight = 1.0; // 2^-k
    double estimate = 0.0, prev = -1.0;
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (int it = 0; it < 64; ++it) {
        double norm = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) norm += b[i][j] * b[i][j];
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        prev = estimate;
        estimate = std::exp(acc + weight * std::log(norm));
        acc += 0.5 * weight * std::log(norm);
        if (it > 4 && std::abs(estimate - prev) <= 1e-9 * std::max(1.0, estimate)) break;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k) s += b[i][k] * b[k][j];
                c[i][j] = s / norm;
            }
        std::swap(b, c);
        weight *= 0.5;
    }
    return estimate;
}

} // namespace birkhoff

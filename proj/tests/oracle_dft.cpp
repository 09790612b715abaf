#include "oracle_dft.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

DftCube dft_forward(int n, double length, std::span<const double> samples) {
    DftCube cube;
    cube.n = n;
    cube.length = length;
    cube.coef.assign(static_cast<std::size_t>(n) * n * n, {0.0, 0.0});
    const double two_pi_over_n = 2.0 * std::numbers::pi / n;
    const double norm = 1.0 / (static_cast<double>(n) * n * n);
    for (int jx = 0; jx < n; ++jx)
        for (int jy = 0; jy < n; ++jy)
            for (int jz = 0; jz < n; ++jz) {
                const int mx = cube.signed_mode(jx);
                const int my = cube.signed_mode(jy);
                const int mz = cube.signed_mode(jz);
                std::complex<double> acc{0.0, 0.0};
                for (int ix = 0; ix < n; ++ix)
                    for (int iy = 0; iy < n; ++iy)
                        for (int iz = 0; iz < n; ++iz) {
                            const double phase =
                                -two_pi_over_n *
                                (double(mx) * ix + double(my) * iy +
                                 double(mz) * iz);
                            acc += samples[(static_cast<std::size_t>(ix) * n +
                                            iy) * n +
                                           iz] *
                                   std::complex<double>{std::cos(phase),
                                                        std::sin(phase)};
                        }
                cube.at(jx, jy, jz) = acc * norm;
            }
    return cube;
}

std::vector<double> dft_inverse(const DftCube& cube) {
    const int n = cube.n;
    std::vector<double> out(static_cast<std::size_t>(n) * n * n, 0.0);
    const double two_pi_over_n = 2.0 * std::numbers::pi / n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                std::complex<double> acc{0.0, 0.0};
                for (int jx = 0; jx < n; ++jx)
                    for (int jy = 0; jy < n; ++jy)
                        for (int jz = 0; jz < n; ++jz) {
                            const int mx = cube.signed_mode(jx);
                            const int my = cube.signed_mode(jy);
                            const int mz = cube.signed_mode(jz);
                            const double phase =
                                two_pi_over_n *
                                (double(mx) * ix + double(my) * iy +
                                 double(mz) * iz);
                            acc += cube.at(jx, jy, jz) *
                                   std::complex<double>{std::cos(phase),
                                                        std::sin(phase)};
                        }
                out[(static_cast<std::size_t>(ix) * n + iy) * n + iz] =
                    acc.real();
            }
    return out;
}

double l2_norm(const DftCube& cube) {
    double sum = 0.0;
    for (const auto& c : cube.coef) sum += std::norm(c);
    const double volume = cube.length * cube.length * cube.length;
    return std::sqrt(volume * sum);
}

}  // namespace oracle

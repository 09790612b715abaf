#include "vespec/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "vespec/energy.hpp"
#include "vespec/random_fields.hpp"
#include "vespec/run_config.hpp"
#include "vespec/spectral_ops.hpp"

namespace vespec {

double theorem_norm(const State& state) {
    ScalarField rho = remove_mean(state.rho_tilde);
    TensorField33 e(state.grid());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SpecBuf s(state.F(i, j).spectrum());
            if (i == j) s[0] -= 1.0;
            e(i, j) = ScalarField::from_spectrum(state.grid(), std::move(s));
        }
    return sobolev_norm(rho, -1.0, 3) + sobolev_norm(state.u, -1.0, 3) +
           sobolev_norm(e, -1.0, 3);
}

InitialData generate_initial_data(const RunConfig& cfg, const Grid& grid) {
    const int band = cfg.effective_data_band();
    ScalarField r1 = random_scalar(grid, band, cfg.seed);
    VectorField r2 = random_divfree(grid, band, cfg.seed + 0x100);
    TensorField33 r3 = random_tensor(grid, band, cfg.seed + 0x200);
    for (int i = 0; i < 3; ++i) r2[i].mutate_spectrum()[0] = cplx{0.0, 0.0};

    // each theorem-norm term is 1-homogeneous in its perturbation, so one
    // global rescale pins the sum to epsilon exactly
    const double unit =
        sobolev_norm(r1, -1.0, 3) + sobolev_norm(r2, -1.0, 3) +
        sobolev_norm(r3, -1.0, 3);
    const double scale = cfg.epsilon > 0.0 && unit > 0.0
                             ? cfg.epsilon / unit
                             : 0.0;

    InitialData out{State(grid), 0.0, {}};
    {
        SpecBuf s(r1.spectrum());
        for (auto& c : s) c *= scale;
        s[0] += 1.0;
        out.state.rho_tilde = ScalarField::from_spectrum(grid, std::move(s));
    }
    for (int i = 0; i < 3; ++i) {
        SpecBuf s(r2[i].spectrum());
        for (auto& c : s) c *= scale;
        out.state.u[i] = ScalarField::from_spectrum(grid, std::move(s));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SpecBuf s(r3(i, j).spectrum());
            for (auto& c : s) c *= scale;
            if (i == j) s[0] += 1.0;
            out.state.F(i, j) = ScalarField::from_spectrum(grid, std::move(s));
        }
    out.theorem_norm = theorem_norm(out.state);
    out.residuals = structure_residuals(out.state);
    return out;
}

namespace {

// Band-limited trigonometric evaluation of a spectral field at an arbitrary
// point. Coefficient list is prebuilt from the stored half-spectrum; the
// mz > 0 entries carry weight 2 via their conjugate mirror.
struct TrigEvaluator {
    struct Mode {
        double kx, ky, kz;
        cplx coef;
        double weight;
    };
    std::vector<Mode> modes;

    explicit TrigEvaluator(const ScalarField& f) {
        const Grid& g = f.grid();
        const SpecBuf& s = f.spectrum();
        const double dk = g.dk();
        const int n = g.n();
        for (int ix = 0; ix < n; ++ix) {
            const int mx = g.signed_mode(ix);
            for (int iy = 0; iy < n; ++iy) {
                const int my = g.signed_mode(iy);
                for (int mz = 0; mz <= n / 2; ++mz) {
                    const cplx c = s[g.spec_index(ix, iy, mz)];
                    if (std::norm(c) == 0.0) continue;
                    modes.push_back({dk * mx, dk * my, dk * mz, c,
                                     g.hermitian_weight(mz)});
                }
            }
        }
    }

    double operator()(double x, double y, double z) const {
        double sum = 0.0;
        for (const Mode& m : modes) {
            const double phase = m.kx * x + m.ky * y + m.kz * z;
            // weight 2 folds in the conjugate mode: 2 Re(c e^{i phase})
            sum += m.weight * (m.coef.real() * std::cos(phase) -
                               m.coef.imag() * std::sin(phase));
        }
        return sum;
    }
};

}  // namespace

State generate_flow_map_data(const Grid& grid, double amplitude, int band,
                             std::uint64_t seed) {
    VectorField psi = random_vector(grid, band, seed);
    std::array<TrigEvaluator, 3> psi_eval{TrigEvaluator(psi[0]),
                                          TrigEvaluator(psi[1]),
                                          TrigEvaluator(psi[2])};
    // Jacobian coefficients d psi_i / d X_j
    TensorField33 gpsi = grad_vec(psi);
    std::array<TrigEvaluator, 9> gpsi_eval{
        TrigEvaluator(gpsi(0, 0)), TrigEvaluator(gpsi(0, 1)),
        TrigEvaluator(gpsi(0, 2)), TrigEvaluator(gpsi(1, 0)),
        TrigEvaluator(gpsi(1, 1)), TrigEvaluator(gpsi(1, 2)),
        TrigEvaluator(gpsi(2, 0)), TrigEvaluator(gpsi(2, 1)),
        TrigEvaluator(gpsi(2, 2))};

    const int n = grid.n();
    State out(grid);
    std::array<RealBuf, 9> fbuf;
    for (auto& b : fbuf) b.assign(grid.point_count(), 0.0);
    RealBuf rbuf(grid.point_count(), 0.0);

    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const double x = grid.coordinate(ix);
                const double y = grid.coordinate(iy);
                const double z = grid.coordinate(iz);
                // invert x = X + a psi(X) by fixed point
                double X = x, Y = y, Z = z;
                for (int it = 0; it < 60; ++it) {
                    const double nx = x - amplitude * psi_eval[0](X, Y, Z);
                    const double ny = y - amplitude * psi_eval[1](X, Y, Z);
                    const double nz = z - amplitude * psi_eval[2](X, Y, Z);
                    const double delta = std::abs(nx - X) + std::abs(ny - Y) +
                                         std::abs(nz - Z);
                    X = nx;
                    Y = ny;
                    Z = nz;
                    if (delta < 1e-14) break;
                }
                const std::size_t p = grid.real_index(ix, iy, iz);
                double f[9];
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        f[3 * i + j] =
                            (i == j ? 1.0 : 0.0) +
                            amplitude * gpsi_eval[3 * i + j](X, Y, Z);
                for (int c = 0; c < 9; ++c) fbuf[c][p] = f[c];
                const double det =
                    f[0] * (f[4] * f[8] - f[5] * f[7]) -
                    f[1] * (f[3] * f[8] - f[5] * f[6]) +
                    f[2] * (f[3] * f[7] - f[4] * f[6]);
                rbuf[p] = 1.0 / det;
            }

    for (int c = 0; c < 9; ++c)
        out.F.comp[c] =
            ScalarField::from_samples(grid, std::move(fbuf[c]));
    out.rho_tilde = ScalarField::from_samples(grid, std::move(rbuf));

    // store as a solver state: band-limit to the 2/3 ball (this is where
    // rho~ det F - 1 picks up its truncation-sized residual)
    out.F = dealias(out.F);
    out.rho_tilde = dealias(out.rho_tilde);
    return out;
}

}  // namespace vespec

#include "vespec/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "vespec/errors.hpp"
#include "vespec/spectral_ops.hpp"

namespace vespec {

namespace {

constexpr double kMeanTol = 1e-12;

// V * sum_k (1+|k|^2)^k_ord |k|^{2s} |fhat|^2 over nonzero modes; the zero
// mode contributes only for s == 0. k_ord may be fractional (E_a needs
// H^{2-gamma0}). The weight depends on the integer |m|^2 only, so it is
// tabulated once per call (snapshots run this often).
double weighted_sum(const ScalarField& f, double s, double k_ord) {
    const Grid& g = f.grid();
    const double dk2 = g.dk() * g.dk();
    const SpecBuf& spec = f.spectrum();
    const int n = g.n();
    const int nzh = g.nz_half();

    const int max_m2 = 3 * (n / 2) * (n / 2);
    std::vector<double> table(max_m2 + 1);
    table[0] = (s == 0.0) ? 1.0 : 0.0;
    for (int m2 = 1; m2 <= max_m2; ++m2) {
        const double kk = dk2 * m2;
        table[m2] = std::pow(1.0 + kk, k_ord) * std::pow(kk, s);
    }

    double sum = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const int mx = g.signed_mode(ix);
        for (int iy = 0; iy < n; ++iy) {
            const int my = g.signed_mode(iy);
            const int mxy2 = mx * mx + my * my;
            for (int izc = 0; izc < nzh; ++izc, ++idx) {
                const double w = table[mxy2 + izc * izc];
                sum += g.hermitian_weight(izc) * w * std::norm(spec[idx]);
            }
        }
    }
    return g.volume() * sum;
}

void require_zero_mean(const ScalarField& f, double s) {
    if (s >= 0.0) return;
    const double rel = relative_mean(f);
    if (rel > kMeanTol) throw NegativeOrderOnNonzeroMean(rel);
}

}  // namespace

double sobolev_norm(const ScalarField& f, double s, int k) {
    require_zero_mean(f, s);
    return std::sqrt(weighted_sum(f, s, k));
}

double sobolev_norm(const VectorField& v, double s, int k) {
    double sum = 0.0;
    for (const auto& c : v.comp) {
        require_zero_mean(c, s);
        sum += weighted_sum(c, s, k);
    }
    return std::sqrt(sum);
}

double sobolev_norm(const TensorField33& t, double s, int k) {
    double sum = 0.0;
    for (const auto& c : t.comp) {
        require_zero_mean(c, s);
        sum += weighted_sum(c, s, k);
    }
    return std::sqrt(sum);
}

HkEquivalence hk_equivalence(const Grid& grid, int k) {
    const double dk2 = grid.dk() * grid.dk();
    HkEquivalence out{1e300, 0.0};
    const int half = grid.n() / 2;
    for (int mx = 0; mx <= half; ++mx)
        for (int my = 0; my <= half; ++my)
            for (int mz = 0; mz <= half; ++mz) {
                const double kk = dk2 * (mx * mx + my * my + mz * mz);
                if (kk == 0.0) continue;
                double num = 0.0;
                for (int j = 0; j <= k; ++j) num += std::pow(kk, j);
                const double ratio = num / std::pow(1.0 + kk, k);
                out.lower = std::min(out.lower, ratio);
                out.upper = std::max(out.upper, ratio);
            }
    return out;
}

EnergySnapshot snapshot(const State& state, const TensorField33& G,
                        const ModelParams& params, double gamma0) {
    if (!(gamma0 > 0.0 && gamma0 < 0.5))
        throw std::invalid_argument("gamma0 must lie in (0, 1/2)");
    const Grid& g = state.grid();
    EnergySnapshot snap;
    snap.t = state.t;
    auto& m = snap.norms;

    // velocity norms
    m["hm1_h3_u"] = sobolev_norm(state.u, -1.0, 3);
    m["u_h3"] = sobolev_norm(state.u, 0.0, 3);
    m["u_h2"] = sobolev_norm(state.u, 0.0, 2);
    m["grad_u_h2"] = sobolev_norm(state.u, 1.0, 2);
    m["grad_u_h1"] = sobolev_norm(state.u, 1.0, 1);
    m["grad2_u_h1"] = sobolev_norm(state.u, 2.0, 1);
    {
        const double gu = sobolev_norm(state.u, 1.0, 0);
        m["diss_grad_u_l2_sq"] = gu * gu;
    }

    // effective-tensor norms; the torus zero mode of G is excluded from the
    // negative-order norms (see header)
    TensorField33 g0(g);
    for (int i = 0; i < 9; ++i) g0.comp[i] = remove_mean(G.comp[i]);
    m["hm1_h3_G"] = sobolev_norm(g0, -1.0, 3);
    VectorField pdg = leray_project(div_tensor(g0));
    m["hm1_pdivg_h2"] = sobolev_norm(pdg, -1.0, 2);
    m["pdivg_h1"] = sobolev_norm(pdg, 0.0, 1);
    m["grad_pdivg_l2"] = sobolev_norm(pdg, 1.0, 0);

    // density / deformation perturbations: || |k|^g . ||_{H^{2-g}}
    {
        ScalarField rho = remove_mean(state.rho_tilde);  // rho~ - 1
        m["rho_hgamma_h2mg"] =
            std::sqrt(weighted_sum(rho, gamma0, 2.0 - gamma0));
        double fsum = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                ScalarField e = state.F(i, j);
                if (i == j) {
                    SpecBuf s(e.spectrum());
                    s[0] -= 1.0;  // F - I
                    e = ScalarField::from_spectrum(g, std::move(s));
                }
                fsum += weighted_sum(e, gamma0, 2.0 - gamma0);
            }
        m["f_hgamma_h2mg"] = std::sqrt(fsum);
    }

    // appendix energy integrals (real-space quadrature)
    {
        auto rho = state.rho_tilde.values();
        double e_tot = 0.0, omega = 0.0;
        std::array<std::span<const double>, 3> uv;
        for (int i = 0; i < 3; ++i) uv[i] = state.u[i].values();
        std::array<std::span<const double>, 9> fv;
        for (int i = 0; i < 9; ++i) fv[i] = state.F.comp[i].values();
        const double c2 = params.c * params.c;
        for (std::size_t p = 0; p < g.point_count(); ++p) {
            double u2 = 0.0;
            for (int i = 0; i < 3; ++i) u2 += uv[i][p] * uv[i][p];
            double f2 = 0.0;
            for (int i = 0; i < 9; ++i) f2 += fv[i][p] * fv[i][p];
            e_tot += rho[p] * (0.5 * u2 + 0.5 * c2 * f2);
            omega += (rho[p] - 1.0) * (rho[p] - 1.0);
        }
        const double dv = g.volume() / static_cast<double>(g.point_count());
        m["energy_total_integral"] = e_tot * dv;
        m["omega_integral"] = omega * dv;
    }

    for (const auto& [key, value] : m)
        if (!std::isfinite(value))
            throw FieldNotFinite("energy snapshot entry " + key);
    return snap;
}

void EnergyHistory::add(const EnergySnapshot& snap) {
    if (!snaps_.empty() && !(snap.t > snaps_.back().t))
        throw NonMonotoneTime("snapshot times must be strictly increasing");
    const auto& m = snap.norms;
    auto sq = [&](const char* key) {
        const double v = m.at(key);
        return v * v;
    };
    const double w = 1.0 + snap.t;

    const double e_sup_now = sq("hm1_h3_u") + sq("hm1_h3_G");
    const double e_int_now = sq("u_h3") + sq("hm1_pdivg_h2");
    const double ew_sup_now = w * (sq("u_h2") + sq("hm1_pdivg_h2"));
    const double ew_int_now = w * (sq("grad_u_h2") + sq("pdivg_h1"));
    const double es_sup_now = w * w * (sq("grad_u_h1") + sq("pdivg_h1"));
    const double es_int_u_now = w * w * sq("grad2_u_h1");
    const double es_int_now = es_int_u_now + w * w * sq("grad_pdivg_l2");
    const double ea_now = sq("rho_hgamma_h2mg") + sq("f_hgamma_h2mg");

    if (!snaps_.empty()) {
        const auto& prev = snaps_.back();
        const double wp = 1.0 + prev.t;
        auto psq = [&](const char* key) {
            const double v = prev.norms.at(key);
            return v * v;
        };
        const double dt = snap.t - prev.t;
        int_E_ += 0.5 * dt *
                  ((psq("u_h3") + psq("hm1_pdivg_h2")) + e_int_now);
        int_Ew_ += 0.5 * dt *
                   (wp * (psq("grad_u_h2") + psq("pdivg_h1")) + ew_int_now);
        const double es_prev_u = wp * wp * psq("grad2_u_h1");
        const double es_prev = es_prev_u + wp * wp * psq("grad_pdivg_l2");
        int_Es_ += 0.5 * dt * (es_prev + es_int_now);
        es_u_int_ += 0.5 * dt * (es_prev_u + es_int_u_now);
    }
    sup_E_ = std::max(sup_E_, e_sup_now);
    sup_Ew_ = std::max(sup_Ew_, ew_sup_now);
    sup_Es_ = std::max(sup_Es_, es_sup_now);
    sup_Ea_ = std::max(sup_Ea_, ea_now);

    snaps_.push_back(snap);
    EnergyTotals tot;
    tot.E = sup_E_ + int_E_;
    tot.E_w = sup_Ew_ + int_Ew_;
    tot.E_s = sup_Es_ + int_Es_;
    tot.E_a = sup_Ea_;
    tot.E_total = tot.E + tot.E_w + tot.E_s + tot.E_a;
    totals_.push_back(tot);
    es_u_int_series_.push_back(es_u_int_);
}

EnergyTotals EnergyHistory::current() const {
    if (totals_.empty()) return {};
    return totals_.back();
}

InterpolationReport check_interpolation(const EnergyHistory& history) {
    InterpolationReport rep;
    const auto& totals = history.totals();
    for (const auto& tot : totals) {
        const double bound = rep.c_equiv * std::sqrt(tot.E * tot.E_s);
        rep.max_violation = std::max(rep.max_violation, tot.E_w - bound);
        if (bound > 0.0)
            rep.max_ratio = std::max(rep.max_ratio, tot.E_w / bound);
    }
    return rep;
}

std::vector<DissipationSample> dissipation_check(const EnergyHistory& history,
                                                 const ModelParams& params,
                                                 bool include_omega) {
    constexpr double kFloor = 1e-14;
    const auto& snaps = history.snapshots();
    std::vector<DissipationSample> out;
    if (snaps.size() < 3) return out;
    auto energy = [&](const EnergySnapshot& s) {
        double e = s.norms.at("energy_total_integral");
        if (include_omega) e += s.norms.at("omega_integral");
        return e;
    };
    for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
        DissipationSample d;
        d.t = snaps[i].t;
        d.dE_dt = (energy(snaps[i + 1]) - energy(snaps[i - 1])) /
                  (snaps[i + 1].t - snaps[i - 1].t);
        d.dissipation = params.mu * snaps[i].norms.at("diss_grad_u_l2_sq");
        d.abs_residual = std::abs(d.dE_dt + d.dissipation);
        d.rel_residual = d.abs_residual / (d.dissipation + kFloor);
        out.push_back(d);
    }
    return out;
}

double fit_decay_rate(std::span<const std::pair<double, double>> series) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, v] : series)
        if (v > 0.0) pts.emplace_back(std::log(1.0 + t), std::log(v));
    if (pts.size() < 10)
        throw InsufficientData("decay fit needs >= 10 positive samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw InsufficientData("degenerate time samples");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace vespec

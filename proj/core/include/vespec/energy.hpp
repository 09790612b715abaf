#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vespec/model.hpp"

namespace vespec {

// ---------------------------------------------------------------------------
// Fractional Sobolev norms and the four time-weighted energies.
//
// H^k norms use the single multiplier (1 + |k|^2)^{k/2} (norm-equivalent to
// the sum-of-derivatives definition; hk_equivalence reports the equivalence
// bounds so inequality checks stay honest). With this convention the
// weighted-energy interpolation E_w <= sqrt(E * E_s) holds mode-by-mode with
// constant exactly 1, including after trapezoid discretization of the time
// integrals — check_interpolation monitors it with c_equiv = 1.
//
// On the torus the (1+t)-power weights are kept exactly as defined, but the
// decay they encode is a whole-space dispersion phenomenon; only
// boundedness of the energies is meaningful here (the spectral gap makes
// zero-mean fields decay exponentially instead).
// ---------------------------------------------------------------------------

/// || |k|^s f ||_{H^k} = sqrt(V * sum (1+|k|^2)^k |k|^{2s} |fhat|^2).
/// Requires zero mean when s < 0 (throws NegativeOrderOnNonzeroMean).
double sobolev_norm(const ScalarField& f, double s, int k);
double sobolev_norm(const VectorField& v, double s, int k);
double sobolev_norm(const TensorField33& t, double s, int k);

/// Bounds of (sum_{j<=k} |k|^{2j}) / (1+|k|^2)^k over this grid's nonzero
/// modes: the equivalence constants between the multiplier H^k norm and the
/// sum-of-derivatives form.
struct HkEquivalence {
    double lower = 1.0;
    double upper = 1.0;
};
HkEquivalence hk_equivalence(const Grid& grid, int k);

/// Instantaneous norms entering the energies. Keys:
///   hm1_h3_u, hm1_h3_G         sup integrands of E
///   u_h3, hm1_pdivg_h2         time integrands of E
///   u_h2                       with hm1_pdivg_h2: sup integrand of E_w
///   grad_u_h2, pdivg_h1        time integrands of E_w (pdivg_h1 also in
///                              the E_s sup with grad_u_h1)
///   grad_u_h1                  sup integrand of E_s
///   grad2_u_h1, grad_pdivg_l2  time integrands of E_s
///   rho_hgamma_h2mg, f_hgamma_h2mg   E_a sup integrands
///   diss_grad_u_l2_sq          ||grad u||_{L^2}^2 (dissipation law)
///   energy_total_integral      int (1/2 rho~ |u|^2 + 1/2 c^2 rho~ |F|^2) dx
///   omega_integral             int (rho~ - 1)^2 dx
/// All entries are norms except the three explicitly squared/integral ones.
struct EnergySnapshot {
    double t = 0.0;
    std::map<std::string, double> norms;
};

/// Computes every labeled norm. G is the effective tensor to diagnose
/// (its spatial mean, which has no decaying counterpart on the torus, is
/// excluded from the negative-order norms). Requires 0 < gamma0 < 1/2.
EnergySnapshot snapshot(const State& state, const TensorField33& G,
                        const ModelParams& params, double gamma0);

struct EnergyTotals {
    double E = 0.0, E_w = 0.0, E_s = 0.0, E_a = 0.0, E_total = 0.0;
};

/// Running sup / trapezoid-integral accumulators over a snapshot sequence.
/// Suprema and integrals are taken over snapshot times with the (1+t)
/// weights of the definitions; both families are non-decreasing in t.
class EnergyHistory {
  public:
    /// Appends a snapshot; times must be strictly increasing
    /// (throws NonMonotoneTime).
    void add(const EnergySnapshot& snap);

    const std::vector<EnergySnapshot>& snapshots() const { return snaps_; }
    /// Energy values as of each snapshot time.
    const std::vector<EnergyTotals>& totals() const { return totals_; }
    EnergyTotals current() const;
    bool empty() const { return snaps_.empty(); }

    /// Running integral of (1+t)^2 ||grad^2 u||_{H^1}^2 alone (the
    /// accumulator whose convergence Theorem-style boundedness asserts).
    const std::vector<double>& weighted_grad2u_integral() const {
        return es_u_int_series_;
    }

  private:
    std::vector<EnergySnapshot> snaps_;
    std::vector<EnergyTotals> totals_;
    double sup_E_ = 0.0, int_E_ = 0.0;
    double sup_Ew_ = 0.0, int_Ew_ = 0.0;
    double sup_Es_ = 0.0, int_Es_ = 0.0;
    double sup_Ea_ = 0.0;
    double es_u_int_ = 0.0;
    std::vector<double> es_u_int_series_;
};

/// update_history: append `snap` to `history` (free-function spelling of
/// EnergyHistory::add).
inline void update_history(EnergyHistory& history, const EnergySnapshot& snap) {
    history.add(snap);
}

struct InterpolationReport {
    double max_violation = 0.0;  ///< max over t of E_w - c_equiv sqrt(E E_s)
    double max_ratio = 0.0;      ///< max over t of E_w / sqrt(E E_s)
    double c_equiv = 1.0;        ///< constant valid for the multiplier norms
};
InterpolationReport check_interpolation(const EnergyHistory& history);

struct DissipationSample {
    double t = 0.0;
    double dE_dt = 0.0;
    double dissipation = 0.0;  ///< mu ||grad u||_{L^2}^2
    double abs_residual = 0.0;
    double rel_residual = 0.0;  ///< abs/(dissipation + floor), floor = 1e-14
};

/// Central-difference check of d/dt E^total = -mu ||grad u||^2 at interior
/// snapshots. include_omega adds int (rho~-1)^2 dx to E^total (that integral
/// is itself conserved by the advection, so the law is unchanged).
std::vector<DissipationSample> dissipation_check(const EnergyHistory& history,
                                                 const ModelParams& params,
                                                 bool include_omega = false);

/// Least-squares slope of log(value) against log(1+t). Requires at least 10
/// positive samples (throws InsufficientData).
double fit_decay_rate(std::span<const std::pair<double, double>> series);

}  // namespace vespec

#pragma once

#include <cstddef>
#include <cstdlib>
#include <numbers>

namespace vespec {

/// Uniform periodic grid on [0, L)^3 with n collocation points per axis.
///
/// Real samples are stored row-major with z fastest:
///   real index (ix, iy, iz)  ->  (ix*n + iy)*n + iz.
/// Spectral coefficients use the half-complex r2c layout with the z axis
/// halved:
///   spec index (ix, iy, izc) ->  (ix*n + iy)*(n/2 + 1) + izc,  izc in [0, n/2].
/// Along x and y the signed integer mode of index i is i for i <= n/2 and
/// i - n otherwise (so index n/2 carries the Nyquist mode -n/2); along z the
/// stored modes are 0..n/2 and the negative half is implied by Hermitian
/// symmetry. Physical wavevectors are k = (2*pi/L) * mode.
class Grid {
  public:
    Grid(int n, double length = 2.0 * std::numbers::pi);

    int n() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / n_; }
    double volume() const { return length_ * length_ * length_; }
    /// Fundamental wavenumber 2*pi/L.
    double dk() const { return 2.0 * std::numbers::pi / length_; }

    std::size_t point_count() const {
        return static_cast<std::size_t>(n_) * n_ * n_;
    }
    int nz_half() const { return n_ / 2 + 1; }
    std::size_t spec_count() const {
        return static_cast<std::size_t>(n_) * n_ * nz_half();
    }

    /// Signed integer mode for a full-axis index (x and y axes).
    int signed_mode(int i) const { return i <= n_ / 2 ? i : i - n_; }
    /// Coordinate of sample i along any axis.
    double coordinate(int i) const { return spacing() * i; }

    /// Multiplicity of a stored z-plane when summing |f^|^2 over the full
    /// mode cube: interior planes stand for a conjugate pair.
    double hermitian_weight(int izc) const {
        return (izc == 0 || 2 * izc == n_) ? 1.0 : 2.0;
    }

    /// 2/3-rule test: modes with 3*|m_i| >= n on any axis are discarded.
    bool dealias_keep(int mx, int my, int mz) const {
        return 3 * std::abs(mx) < n_ && 3 * std::abs(my) < n_ &&
               3 * std::abs(mz) < n_;
    }

    std::size_t real_index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }
    std::size_t spec_index(int ix, int iy, int izc) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * nz_half() + izc;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n_ == b.n_ && a.length_ == b.length_;
    }

  private:
    int n_;
    double length_;
};

}  // namespace vespec

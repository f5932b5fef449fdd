#ifndef KORTEWEG_PROFILE_HPP
#define KORTEWEG_PROFILE_HPP

#include <optional>
#include <vector>

#include "korteweg/model.hpp"

namespace korteweg {

struct ProfileOptions {
  /// Target for |vbar(+-L) - v_inf|; picks L when half_length is unset.
  double tail_tol = 1e-12;
  /// Upper bound on nu * h; picks h when step is unset.
  double nu_h = 0.05;
  std::optional<double> half_length;
  std::optional<double> step;
};

/// Solitary wave at speed s sampled on x_i = -L + i h, i = 0..2M, with the
/// crest at x = 0. Values beyond [-L, L] follow the exponential tail.
class WaveProfile {
 public:
  WaveProfile(ModelParams params, double s, double half_length, int half_count,
              double crest, double nu, double tail_amp,
              std::vector<double> vbar, std::vector<double> vbar_x,
              std::vector<double> vbar_xx);

  const ModelParams& params() const { return params_; }
  double speed() const { return s_; }
  double half_length() const { return half_length_; }
  double step() const { return step_; }
  int size() const { return static_cast<int>(vbar_.size()); }
  double crest() const { return crest_; }
  double nu() const { return nu_; }
  double tail_amp_plus() const { return tail_amp_; }
  double tail_amp_minus() const { return tail_amp_; }

  double x(int i) const { return -half_length_ + i * step_; }
  std::vector<double> grid() const;
  const std::vector<double>& vbar() const { return vbar_; }
  const std::vector<double>& vbar_x() const { return vbar_x_; }
  const std::vector<double>& vbar_xx() const { return vbar_xx_; }
  const std::vector<double>& ubar() const { return ubar_; }

  /// Dense evaluation (quintic Hermite inside the window, analytic tails
  /// outside).
  double vbar_at(double x) const;
  double vbar_x_at(double x) const;

 private:
  ModelParams params_;
  double s_;
  double half_length_;
  double step_;
  double crest_;
  double nu_;
  double tail_amp_;
  std::vector<double> vbar_, vbar_x_, vbar_xx_, vbar_xxx_, ubar_;
};

/// Homoclinic profile by quadrature on the zero-energy level set
/// (1/2) kappa v_x^2 = W(v). Throws kNotAdmissible, kNoHomoclinic or
/// kQuadratureFailure.
WaveProfile solve_profile(const ModelParams& params, double s,
                          const ProfileOptions& options = {});

/// Turning point v* of the homoclinic loop; throws kNoHomoclinic.
double turning_point(const ModelParams& params, double s);

/// W(v) = -int_{v_inf}^{v} (s^2 (z - v_inf) + p(z) - p(v_inf)) dz.
double profile_potential(const ModelParams& params, double s, double v);

/// Residual of the first integral (1/2) kappa v_x^2 - W(v) at grid point i.
double energy_residual(const WaveProfile& profile, int i);

/// Number of sign changes of vbar_x over the grid interior (zeros skipped).
int node_count(const std::vector<double>& vbar_x);
inline int node_count(const WaveProfile& profile) {
  return node_count(profile.vbar_x());
}

struct ProfileFamily {
  double s_center = 0.0;
  double ds = 0.0;
  WaveProfile minus;
  WaveProfile center;
  WaveProfile plus;
  std::vector<double> ds_vbar;  // d vbar / ds at s_center
  std::vector<double> ds_ubar;  // d ubar / ds at s_center
};

/// Default finite-difference step for s-derivatives: 1e-3 * max(1, |s|).
double default_speed_step(double s);

/// Profiles at s - ds, s, s + ds on the grid of the center profile.
ProfileFamily family_at(const ModelParams& params, double s, double ds,
                        const ProfileOptions& options = {});

}  // namespace korteweg

#endif  // KORTEWEG_PROFILE_HPP

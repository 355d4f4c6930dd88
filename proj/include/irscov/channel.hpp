// SPDX-License-Identifier: Apache-2.0

// Geometric narrowband mmWave channels for a BS -> IRS -> user link.
//
// Frame of reference used by pathloss_scenario():
//
//              z (vertical, IRS rows / Mv)
//              |
//              |      IRS lies in the y-z plane and faces +x.
//              |      Elevation theta_v is measured from +z,
//              +------ y (horizontal, IRS columns / Mh)
//             /       azimuth theta_h is measured in the x-y plane from +y.
//            x        The BS ULA is laid out along x.
//
// Unit direction u = (sin tv sin th, sin tv cos th, cos tv) gives
// cos(theta_v) = u_z and sin(theta_v) cos(theta_h) = u_y, which are exactly the
// components that drive the vertical and horizontal IRS phase progressions.

#ifndef IRSCOV_CHANNEL_HPP
#define IRSCOV_CHANNEL_HPP

#include <array>
#include <vector>

#include "irscov/rng.hpp"
#include "irscov/toeplitz.hpp"
#include "irscov/types.hpp"

namespace irscov {

struct ArrayGeometry {
  Index n_bs = 4;
  Index m_v = 8;
  Index m_h = 8;
  double spacing_ratio = 0.5;  ///< element spacing over wavelength

  Index irs_elements() const { return m_v * m_h; }
  Index cascade_size() const { return n_bs * m_v * m_h; }
  /// Level sizes (N, Mv, Mh) of the cascade covariance.
  LevelDims ccm_dims() const { return LevelDims::three(n_bs, m_v, m_h); }
  void validate() const;
};

/// One BS-IRS path: AoD at the BS, elevation/azimuth AoA at the IRS.
struct BsIrsPath {
  double aod = 0.0;
  double aoa_elevation = 0.0;
  double aoa_azimuth = 0.0;
  double variance = 1.0;
};

/// One IRS-user path: elevation/azimuth AoD at the IRS.
struct IrsUserPath {
  double aod_elevation = 0.0;
  double aod_azimuth = 0.0;
  double variance = 1.0;
};

struct PathSet {
  std::vector<BsIrsPath> bs_irs;
  std::vector<IrsUserPath> irs_user;

  Index bs_irs_count() const { return static_cast<Index>(bs_irs.size()); }
  Index irs_user_count() const { return static_cast<Index>(irs_user.size()); }
  /// Number of composite cascade paths, L * P.
  Index composite_count() const { return bs_irs_count() * irs_user_count(); }
  void validate() const;
};

/// Spatial frequencies of a BS-IRS path: nu1 (BS), nu2 (IRS vertical), nu3 (IRS horizontal).
struct BsIrsFrequencies {
  double nu1, nu2, nu3;
};
BsIrsFrequencies spatial_frequencies(const BsIrsPath& path, double spacing_ratio);

/// Spatial frequencies of an IRS-user path: nu4 (vertical), nu5 (horizontal).
struct IrsUserFrequencies {
  double nu4, nu5;
};
IrsUserFrequencies spatial_frequencies(const IrsUserPath& path, double spacing_ratio);

struct ChannelRealization {
  CMatrix g;        ///< M x N, BS-IRS
  CVector h;        ///< M, IRS-user
  CMatrix cascade;  ///< M x N, diag(h^H) G
  CVector hbar;     ///< vec(cascade)
  CVector alpha;    ///< BS-IRS gains
  CVector beta;     ///< IRS-user gains
};

/// One composite cascade path of the vectorized channel.
struct CompositeLag {
  Index l = 0;          ///< BS-IRS path, 0-based
  Index p = 0;          ///< IRS-user path, 0-based
  Index x_index = 0;    ///< 1-based position in vec(beta^* (x) Sigma)
  double nu1 = 0.0;
  double nu6 = 0.0;     ///< nu2_l - nu4_p
  double nu7 = 0.0;     ///< nu3_l - nu5_p
  double variance = 0.0;
};

struct GroundTruthCcm {
  CMatrix rh;
  ToeplitzGenerator generator;
  Index rank = 0;  ///< L * P
  std::vector<CompositeLag> composite;
};

/// a(nu, d) = [1, e^{j nu}, ..., e^{j (d-1) nu}]^T
CVector steering_vector(double nu, Index d);

/// Receive response of the IRS: a(nu_v, Mv) (x) a(nu_h, Mh).
CVector irs_response(double nu_v, double nu_h, const ArrayGeometry& geom);

CMatrix bs_irs_channel(const ArrayGeometry& geom, const PathSet& paths, const CVector& alpha);
CVector irs_user_channel(const ArrayGeometry& geom, const PathSet& paths, const CVector& beta);
CMatrix cascade_channel(const CMatrix& g, const CVector& h);

std::vector<CompositeLag> composite_lags(const PathSet& paths, const ArrayGeometry& geom);

/// Vectorized-channel response a^*(nu1, N) (x) a(nu6, Mv) (x) a(nu7, Mh) of a composite path.
CVector composite_response(const CompositeLag& c, const ArrayGeometry& geom);

/// Exact E[hbar hbar^H]. Throws SolverError if the result is not 3-level Toeplitz.
GroundTruthCcm true_ccm(const PathSet& paths, const ArrayGeometry& geom);

/// Draws alpha_l ~ CN(0, var_l) for l = 1..L, then beta_p ~ CN(0, var_p).
ChannelRealization sample_realization(const PathSet& paths, const ArrayGeometry& geom, Rng& rng);

using Position = std::array<double, 3>;

struct ScenarioOptions {
  Index bs_irs_paths = 3;    ///< one LOS + (L - 1) NLOS
  Index irs_user_paths = 3;  ///< one LOS + (P - 1) NLOS
  double shadowing_db = 8.7;
};

/// Pathloss in dB for a link of length d metres with shadowing term epsilon_db.
double pathloss_db(double distance, double epsilon_db);

/// LOS path from geometry, NLOS angles uniform on [-pi, pi], LOS gain variance from
/// the pathloss model, NLOS variances sharing LOS / K_rician equally.
PathSet pathloss_scenario(const Position& bs, const Position& irs, const Position& user, double rician_db,
                          Rng& rng, const ScenarioOptions& options = {});

}  // namespace irscov

#endif  // IRSCOV_CHANNEL_HPP

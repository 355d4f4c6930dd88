// SPDX-License-Identifier: Apache-2.0

#include "irscov/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "irscov/errors.hpp"
#include "irscov/linalg.hpp"

namespace irscov {

void ArrayGeometry::validate() const {
  if (n_bs < 1 || m_v < 1 || m_h < 1) throw StructuralError("ArrayGeometry: element counts must be >= 1");
  if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio))
    throw StructuralError("ArrayGeometry: spacing_ratio must be positive and finite");
}

void PathSet::validate() const {
  if (bs_irs.empty() || irs_user.empty()) throw StructuralError("PathSet: need at least one path per link");
  auto check = [](double v, const char* what) {
    if (!std::isfinite(v)) throw StructuralError(std::string("PathSet: non-finite ") + what);
  };
  for (const auto& p : bs_irs) {
    check(p.aod, "angle");
    check(p.aoa_elevation, "angle");
    check(p.aoa_azimuth, "angle");
    check(p.variance, "variance");
    if (p.variance < 0.0) throw StructuralError("PathSet: negative gain variance");
  }
  for (const auto& p : irs_user) {
    check(p.aod_elevation, "angle");
    check(p.aod_azimuth, "angle");
    check(p.variance, "variance");
    if (p.variance < 0.0) throw StructuralError("PathSet: negative gain variance");
  }
}

BsIrsFrequencies spatial_frequencies(const BsIrsPath& path, double spacing_ratio) {
  const double k = 2.0 * kPi * spacing_ratio;
  return {k * std::sin(path.aod), k * std::cos(path.aoa_elevation),
          k * std::sin(path.aoa_elevation) * std::cos(path.aoa_azimuth)};
}

IrsUserFrequencies spatial_frequencies(const IrsUserPath& path, double spacing_ratio) {
  const double k = 2.0 * kPi * spacing_ratio;
  return {k * std::cos(path.aod_elevation), k * std::sin(path.aod_elevation) * std::cos(path.aod_azimuth)};
}

CVector steering_vector(double nu, Index d) {
  if (d < 1) throw StructuralError("steering_vector: length must be >= 1");
  CVector a(d);
  for (Index k = 0; k < d; ++k) a(k) = std::polar(1.0, static_cast<double>(k) * nu);
  return a;
}

CVector irs_response(double nu_v, double nu_h, const ArrayGeometry& geom) {
  const CVector av = steering_vector(nu_v, geom.m_v);
  const CVector ah = steering_vector(nu_h, geom.m_h);
  CVector out(geom.irs_elements());
  for (Index v = 0; v < geom.m_v; ++v) out.segment(v * geom.m_h, geom.m_h) = av(v) * ah;
  return out;
}

CMatrix bs_irs_channel(const ArrayGeometry& geom, const PathSet& paths, const CVector& alpha) {
  if (alpha.size() != paths.bs_irs_count())
    throw DimensionError("bs_irs_channel: " + std::to_string(alpha.size()) + " gains for " +
                         std::to_string(paths.bs_irs_count()) + " paths");
  CMatrix g = CMatrix::Zero(geom.irs_elements(), geom.n_bs);
  for (Index l = 0; l < paths.bs_irs_count(); ++l) {
    const auto f = spatial_frequencies(paths.bs_irs[static_cast<std::size_t>(l)], geom.spacing_ratio);
    const CVector ar = irs_response(f.nu2, f.nu3, geom);
    const CVector at = steering_vector(f.nu1, geom.n_bs);
    g.noalias() += alpha(l) * ar * at.adjoint();
  }
  return g;
}

CVector irs_user_channel(const ArrayGeometry& geom, const PathSet& paths, const CVector& beta) {
  if (beta.size() != paths.irs_user_count())
    throw DimensionError("irs_user_channel: " + std::to_string(beta.size()) + " gains for " +
                         std::to_string(paths.irs_user_count()) + " paths");
  CVector h = CVector::Zero(geom.irs_elements());
  for (Index p = 0; p < paths.irs_user_count(); ++p) {
    const auto f = spatial_frequencies(paths.irs_user[static_cast<std::size_t>(p)], geom.spacing_ratio);
    h += beta(p) * irs_response(f.nu4, f.nu5, geom);
  }
  return h;
}

CMatrix cascade_channel(const CMatrix& g, const CVector& h) {
  if (g.rows() != h.size())
    throw DimensionError("cascade_channel: G has " + std::to_string(g.rows()) + " rows, h has " +
                         std::to_string(h.size()) + " entries");
  return h.conjugate().asDiagonal() * g;
}

std::vector<CompositeLag> composite_lags(const PathSet& paths, const ArrayGeometry& geom) {
  const Index big_l = paths.bs_irs_count();
  const Index big_p = paths.irs_user_count();
  std::vector<CompositeLag> out;
  out.reserve(static_cast<std::size_t>(big_l * big_p));
  // Ordered by x_index, i.e. l-major then p.
  for (Index l = 0; l < big_l; ++l) {
    const auto& bp = paths.bs_irs[static_cast<std::size_t>(l)];
    const auto fb = spatial_frequencies(bp, geom.spacing_ratio);
    for (Index p = 0; p < big_p; ++p) {
      const auto& up = paths.irs_user[static_cast<std::size_t>(p)];
      const auto fu = spatial_frequencies(up, geom.spacing_ratio);
      CompositeLag c;
      c.l = l;
      c.p = p;
      c.x_index = p * big_l + (l + 1) + l * big_l * big_p;
      c.nu1 = fb.nu1;
      c.nu6 = fb.nu2 - fu.nu4;
      c.nu7 = fb.nu3 - fu.nu5;
      c.variance = bp.variance * up.variance;
      out.push_back(c);
    }
  }
  return out;
}

CVector composite_response(const CompositeLag& c, const ArrayGeometry& geom) {
  const CVector a1 = steering_vector(c.nu1, geom.n_bs).conjugate();
  const CVector ar = irs_response(c.nu6, c.nu7, geom);
  CVector out(geom.cascade_size());
  for (Index n = 0; n < geom.n_bs; ++n) out.segment(n * ar.size(), ar.size()) = a1(n) * ar;
  return out;
}

GroundTruthCcm true_ccm(const PathSet& paths, const ArrayGeometry& geom) {
  geom.validate();
  paths.validate();
  auto composite = composite_lags(paths, geom);
  const Index n = geom.cascade_size();
  CMatrix basis(n, static_cast<Index>(composite.size()));
  RVector weights(static_cast<Index>(composite.size()));
  for (std::size_t k = 0; k < composite.size(); ++k) {
    basis.col(static_cast<Index>(k)) = composite_response(composite[k], geom);
    weights(static_cast<Index>(k)) = composite[k].variance;
  }
  CMatrix rh = basis * weights.asDiagonal() * basis.adjoint();
  rh = hermitian_part(rh);

  const auto sets = lag_index_sets(geom.ccm_dims());
  auto generator = toeplitz_adjoint_average(rh, *sets);
  const double scale = rh.cwiseAbs().maxCoeff();
  const double spread = max_lag_spread(rh, *sets);
  if (spread > 1e-10 * std::max(scale, std::numeric_limits<double>::min()))
    throw SolverError("true_ccm: covariance is not 3-level Toeplitz (relative spread " +
                      std::to_string(spread / scale) + ")");
  return {std::move(rh), std::move(generator), paths.composite_count(), std::move(composite)};
}

ChannelRealization sample_realization(const PathSet& paths, const ArrayGeometry& geom, Rng& rng) {
  ChannelRealization r;
  r.alpha.resize(paths.bs_irs_count());
  for (Index l = 0; l < r.alpha.size(); ++l)
    r.alpha(l) = complex_normal(rng, paths.bs_irs[static_cast<std::size_t>(l)].variance);
  r.beta.resize(paths.irs_user_count());
  for (Index p = 0; p < r.beta.size(); ++p)
    r.beta(p) = complex_normal(rng, paths.irs_user[static_cast<std::size_t>(p)].variance);
  r.g = bs_irs_channel(geom, paths, r.alpha);
  r.h = irs_user_channel(geom, paths, r.beta);
  r.cascade = cascade_channel(r.g, r.h);
  r.hbar = vec(r.cascade);
  return r;
}

double pathloss_db(double distance, double epsilon_db) {
  return 61.4 + 29.2 * std::log10(distance) + epsilon_db;
}

namespace {

struct Direction {
  double x, y, z, length;
};

Direction direction(const Position& from, const Position& to) {
  const double dx = to[0] - from[0];
  const double dy = to[1] - from[1];
  const double dz = to[2] - from[2];
  const double len = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (!(len > 0.0)) throw StructuralError("pathloss_scenario: coincident positions");
  return {dx / len, dy / len, dz / len, len};
}

double elevation(const Direction& d) { return std::acos(std::clamp(d.z, -1.0, 1.0)); }
double azimuth(const Direction& d) { return std::atan2(d.x, d.y); }

}  // namespace

PathSet pathloss_scenario(const Position& bs, const Position& irs, const Position& user, double rician_db,
                          Rng& rng, const ScenarioOptions& options) {
  if (std::isnan(rician_db)) throw StructuralError("pathloss_scenario: Rician factor is NaN");
  if (options.bs_irs_paths < 1 || options.irs_user_paths < 1)
    throw StructuralError("pathloss_scenario: need at least the LOS path on each link");
  const Direction bs_to_irs = direction(bs, irs);
  const Direction irs_to_bs = direction(irs, bs);
  const Direction irs_to_user = direction(irs, user);

  std::normal_distribution<double> shadow(0.0, options.shadowing_db);
  const double los_bs_irs = std::pow(10.0, -0.1 * pathloss_db(bs_to_irs.length, shadow(rng)));
  const double los_irs_user = std::pow(10.0, -0.1 * pathloss_db(irs_to_user.length, shadow(rng)));
  const double k_lin = std::pow(10.0, rician_db / 10.0);

  PathSet ps;
  ps.bs_irs.push_back({std::asin(std::clamp(bs_to_irs.x, -1.0, 1.0)), elevation(irs_to_bs), azimuth(irs_to_bs),
                       los_bs_irs});
  ps.irs_user.push_back({elevation(irs_to_user), azimuth(irs_to_user), los_irs_user});

  const auto n_bs_nlos = options.bs_irs_paths - 1;
  const auto n_user_nlos = options.irs_user_paths - 1;
  for (Index k = 0; k < n_bs_nlos; ++k) {
    BsIrsPath p;
    p.aod = uniform(rng, -kPi, kPi);
    p.aoa_elevation = uniform(rng, -kPi, kPi);
    p.aoa_azimuth = uniform(rng, -kPi, kPi);
    p.variance = los_bs_irs / (k_lin * static_cast<double>(n_bs_nlos));
    ps.bs_irs.push_back(p);
  }
  for (Index k = 0; k < n_user_nlos; ++k) {
    IrsUserPath p;
    p.aod_elevation = uniform(rng, -kPi, kPi);
    p.aod_azimuth = uniform(rng, -kPi, kPi);
    p.variance = los_irs_user / (k_lin * static_cast<double>(n_user_nlos));
    ps.irs_user.push_back(p);
  }
  return ps;
}

}  // namespace irscov

#pragma once

#include <cmath>

#include "radbkg/constants.hpp"
#include "radbkg/geometry.hpp"
#include "radbkg/rng.hpp"

namespace radbkg {

struct ComptonSample {
  double scattered_kev;
  double cos_theta;  // photon scattering angle
};

// Sample the scattered-photon energy fraction from the Klein-Nishina density
// by the standard composition-rejection method (mix of 1/eps and eps terms).
inline ComptonSample sample_klein_nishina(double energy_kev, RandomStream& rng) {
  const double k = energy_kev / constants::electron_mass_kev;
  const double eps0 = 1.0 / (1.0 + 2.0 * k);
  const double eps0sq = eps0 * eps0;
  const double alpha1 = -std::log(eps0);
  const double alpha2 = 0.5 * (1.0 - eps0sq);
  double eps, one_minus_cos, sint2;
  do {
    if (rng.uniform() < alpha1 / (alpha1 + alpha2)) {
      eps = std::exp(-alpha1 * rng.uniform());
    } else {
      eps = std::sqrt(eps0sq + (1.0 - eps0sq) * rng.uniform());
    }
    one_minus_cos = (1.0 - eps) / (k * eps);
    sint2 = one_minus_cos * (2.0 - one_minus_cos);
  } while (1.0 - eps * sint2 / (1.0 + eps * eps) < rng.uniform());
  return {eps * energy_kev, 1.0 - one_minus_cos};
}

// New photon direction and the recoil-electron direction (lab frame), from
// momentum conservation with the sampled scattering angle.
struct ComptonKinematics {
  Vec3 photon_dir;
  Vec3 electron_dir;
};

inline ComptonKinematics compton_kinematics(const Vec3& incident_dir,
                                            double energy_kev, double scattered_kev,
                                            double cos_theta, RandomStream& rng) {
  double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  double phi = 2.0 * constants::pi * rng.uniform();
  Vec3 local{sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
  Vec3 photon = rotate_to_frame(local, incident_dir);
  // p_e = p_gamma - p_gamma' (photon momentum = energy)
  Vec3 electron{energy_kev * incident_dir[0] - scattered_kev * photon[0],
                energy_kev * incident_dir[1] - scattered_kev * photon[1],
                energy_kev * incident_dir[2] - scattered_kev * photon[2]};
  double n = norm(electron);
  if (n > 0.0)
    for (auto& c : electron) c /= n;
  else
    electron = incident_dir;
  return {photon, electron};
}

}  // namespace radbkg

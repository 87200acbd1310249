#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radbkg/constants.hpp"
#include "radbkg/geometry.hpp"
#include "radbkg/phase_space.hpp"
#include "radbkg/rng.hpp"

namespace radbkg {

struct ReaimTarget {
  Vec3 center_cm{0.0, 0.0, 0.0};
  double radius_cm = 0.0;
  double generation_area_cm2 = 0.0;

  double disc_area_cm2() const { return constants::pi * radius_cm * radius_cm; }
  double time_ratio() const { return generation_area_cm2 / disc_area_cm2(); }

  void validate() const {
    if (!(radius_cm > 0.0)) throw std::invalid_argument("reaim radius must be > 0");
    if (!(generation_area_cm2 > disc_area_cm2()))
      throw std::invalid_argument(
          "reaim: generation area must exceed the sphere cross-section");
  }
};

// Variance reduction: shift each trajectory, direction preserved, so that it
// passes through a uniformly sampled point of the disc of radius r normal to
// the trajectory through the sphere center. Particles spread over the
// generation area now all strike the disc, so the modeled exposure grows by
// the area ratio: T' = T x generation_area / (pi r^2), keeping the physical
// flux unchanged (the uniform-beam rate stays f x A). Records sharing a
// stage-1 history are shifted rigidly together, anchored on a randomly
// chosen member, so intra-event correlations survive.
inline PhaseSpaceSet reaim(const PhaseSpaceSet& input, const ReaimTarget& target,
                           RandomStream& rng) {
  target.validate();
  if (std::abs(input.generation_area_cm2 - target.generation_area_cm2) >
      1e-9 * target.generation_area_cm2)
    throw std::invalid_argument("reaim: generation area does not match the record set");

  PhaseSpaceSet out;
  out.records.reserve(input.records.size());
  out.effective_time_s = input.effective_time_s * target.time_ratio();
  out.generation_area_cm2 = target.disc_area_cm2();

  std::size_t i = 0;
  while (i < input.records.size()) {
    std::size_t j = i + 1;
    while (j < input.records.size() &&
           input.records[j].history == input.records[i].history)
      ++j;
    std::size_t anchor = i + (j - i > 1 ? static_cast<std::size_t>(
                                              rng.uniform() * static_cast<double>(j - i))
                                        : 0);
    anchor = std::min(anchor, j - 1);
    const auto& a = input.records[anchor];

    // uniform point on the disc normal to the anchor direction
    double r = target.radius_cm * std::sqrt(rng.uniform());
    double phi = 2.0 * constants::pi * rng.uniform();
    Vec3 local{r * std::cos(phi), r * std::sin(phi), 0.0};
    Vec3 offset = rotate_to_frame(local, a.direction);
    // start the anchor one diameter upstream of its disc point: outside the
    // sphere, on the line through the sampled point
    Vec3 new_pos{
        target.center_cm[0] + offset[0] - 2.0 * target.radius_cm * a.direction[0],
        target.center_cm[1] + offset[1] - 2.0 * target.radius_cm * a.direction[1],
        target.center_cm[2] + offset[2] - 2.0 * target.radius_cm * a.direction[2]};
    Vec3 shift{new_pos[0] - a.position_cm[0], new_pos[1] - a.position_cm[1],
               new_pos[2] - a.position_cm[2]};

    for (std::size_t k = i; k < j; ++k) {
      PhaseSpaceRecord rec = input.records[k];
      for (int c = 0; c < 3; ++c) rec.position_cm[c] += shift[c];
      out.records.push_back(rec);
    }
    i = j;
  }
  return out;
}

}  // namespace radbkg

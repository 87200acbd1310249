#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radbkg/materials.hpp"
#include "radbkg/phase_space.hpp"

namespace radbkg {

// Rotate a vector given in the frame whose z-axis is `axis` into the lab
// frame (the classic RotateUz).
inline Vec3 rotate_to_frame(const Vec3& local, const Vec3& axis) {
  double up = axis[0] * axis[0] + axis[1] * axis[1];
  if (up > 0.0) {
    up = std::sqrt(up);
    double px = local[0], py = local[1], pz = local[2];
    return {(axis[0] * axis[2] * px - axis[1] * py) / up + axis[0] * pz,
            (axis[1] * axis[2] * px + axis[0] * py) / up + axis[1] * pz,
            -up * px + axis[2] * pz};
  }
  if (axis[2] < 0.0) return {-local[0], local[1], -local[2]};  // axis = -z
  return local;
}

// Stack of laterally infinite slabs along z. Layer i occupies
// [z_edges[i], z_edges[i+1]); layer 0 starts at z = 0.
struct SlabLayer {
  const MaterialDef* material;
  double thickness_cm;
};

struct SlabGeometry {
  std::vector<SlabLayer> layers;
  int emission_layer = -1;  // for gamma mode: decays occur uniformly in it

  void validate() const {
    for (const auto& l : layers)
      if (!(l.thickness_cm > 0.0)) throw std::invalid_argument("layer thickness <= 0");
    if (emission_layer >= static_cast<int>(layers.size()))
      throw std::invalid_argument("emission layer out of range");
  }

  double total_thickness_cm() const {
    double t = 0.0;
    for (const auto& l : layers) t += l.thickness_cm;
    return t;
  }

  double layer_bottom_cm(std::size_t i) const {
    double z = 0.0;
    for (std::size_t j = 0; j < i; ++j) z += layers[j].thickness_cm;
    return z;
  }

  // layer index containing z, or -1 below / n above
  int locate(double z) const {
    if (z < 0.0) return -1;
    double top = 0.0;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      top += layers[i].thickness_cm;
      if (z < top) return static_cast<int>(i);
    }
    return static_cast<int>(layers.size());
  }
};

// Axis-aligned box centered on the origin (the substrate).
struct Box {
  Vec3 half{0.0, 0.0, 0.0};  // cm

  double half_diagonal() const { return norm(half); }

  // Entry/exit distances of ray p + t*d with the box, for t >= 0.
  // Returns nullopt when the ray misses.
  std::optional<std::pair<double, double>> intersect(const Vec3& p, const Vec3& d) const {
    double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      if (d[i] == 0.0) {
        if (std::abs(p[i]) > half[i]) return std::nullopt;
        continue;
      }
      double ta = (-half[i] - p[i]) / d[i];
      double tb = (half[i] - p[i]) / d[i];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) return std::nullopt;
    }
    if (t1 <= 0.0) return std::nullopt;
    return std::make_pair(std::max(t0, 0.0), t1);
  }

  bool contains(const Vec3& p) const {
    return std::abs(p[0]) <= half[0] && std::abs(p[1]) <= half[1] &&
           std::abs(p[2]) <= half[2];
  }

  // distance along d from an interior point to the surface
  double exit_distance(const Vec3& p, const Vec3& d) const {
    double t1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      if (d[i] == 0.0) continue;
      double tb = ((d[i] > 0.0 ? half[i] : -half[i]) - p[i]) / d[i];
      t1 = std::min(t1, tb);
    }
    return std::max(t1, 0.0);
  }
};

}  // namespace radbkg

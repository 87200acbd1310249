#pragma once

namespace radbkg::constants {

inline constexpr double electron_mass_kev = 510.99895;
inline constexpr double electron_mass_mev = 0.51099895;
inline constexpr double muon_mass_mev = 105.6583755;
inline constexpr double proton_mass_mev = 938.2720813;
inline constexpr double classical_electron_radius_cm = 2.8179403262e-13;
inline constexpr double avogadro = 6.02214076e23;
inline constexpr double k_bethe_mev_cm2 = 0.307075;  // 4 pi N_A r_e^2 m_e c^2 / mol
inline constexpr double pi = 3.14159265358979323846;

// reference values of the analytic rate model
inline constexpr double silicon_density_g_cm3 = 2.329;
inline constexpr double nominal_thickness_um = 500.0;
inline constexpr double nominal_area_mm2 = 100.0;
inline constexpr double pair_threshold_kev = 2.0 * electron_mass_kev;

}  // namespace radbkg::constants

#pragma once

// Physical constants, CODATA 2018. Every unit conversion in the library goes
// through this one table so that converted values are bit-reproducible.
namespace ryd::constants {

inline constexpr double hartree_J = 4.3597447222071e-18;     // E_h
inline constexpr double bohr_radius_m = 5.29177210903e-11;   // a_0
inline constexpr double hbar_Js = 1.054571817e-34;
inline constexpr double planck_Js = 6.62607015e-34;          // h, exact

}  // namespace ryd::constants

#pragma once

// The exact-solution instances exercised by the tests, all at ν = 0.01.

#include <string>
#include <vector>

#include "kolmo/exact.hpp"

namespace kolmo::cases {

inline ExactSpec unidirectional(double nu = 0.01) {
    return {family::Unidirectional{1, {{1.0, 0.5}, {0.3, 0.0}, {0.0, 0.2}}}, nu};
}

// -cos y - e^{-νt} cos y + e^{-νt}(2 cos y + sin(√3/2 x) sin(y/2))
inline ExactSpec low_mode(double nu = 0.01) {
    family::ExtendedLowMode e;
    e.a = 1;
    e.alpha_sq = {3, 4};
    e.beta_inv = 2;
    e.c = {0.0, 2.0, 1.0, 0.0, 0.0, 0.0};
    return {e, nu};
}

// e^{-√ν t} sin(2αx + 2y) + e^{-4√ν t} cos(4αx + 4y), α² = 3/2
inline ExactSpec bar_flow(double nu = 0.01) {
    return {family::BarFlow{{3, 2}, 1, 1, {{2, 0.0, 1.0}, {4, 1.0, 0.0}}}, nu};
}

inline ExactSpec quadrupole(double nu = 0.01) {
    return {family::TaylorQuadrupole{{2, 1}, 1, 2, {1.0, 0.5, -0.3, 0.2}}, nu};
}

// e^{-0.9√ν t}(sin √5x sin 2y + 0.3 cos √5x cos 2y + 0.4 sin 3y)
inline ExactSpec resonant3(double nu = 0.01) {
    return {family::Resonant3{{{5, 1}, 1, 2, {1.0, 0.0, 0.0, 0.3}}, 3, 0.4, 0.0}, nu};
}

// e^{-2.5√ν t}(0.4 sin 4x sin 3y + 0.5 cos 4x cos 3y + sin 5y + 0.3 sin 5x)
inline ExactSpec resonant4(double nu = 0.01) {
    return {family::Resonant4{{{1, 1}, 4, 3, {0.4, 0.0, 0.0, 0.5}}, 5, 5, 0.3, 0.0, 1.0, 0.0}, nu};
}

struct Named {
    std::string name;
    ExactSpec spec;
};

inline std::vector<Named> oracle_suite(double nu = 0.01) {
    return {{"unidirectional", unidirectional(nu)}, {"low_mode", low_mode(nu)},   {"bar_flow", bar_flow(nu)},
            {"quadrupole", quadrupole(nu)},         {"resonant3", resonant3(nu)}, {"resonant4", resonant4(nu)}};
}

} // namespace kolmo::cases

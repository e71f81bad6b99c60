#pragma once

// Reference values for tests/data/icosphere642.off (icosphere level 3, unit
// radius), produced by tests/oracles/icosphere_oracle.py with numpy/scipy.

namespace oracle {

inline constexpr double kIcosphereArea = 12.506492733969928;
inline constexpr int kIcosphereAntipodeA = 0;
inline constexpr int kIcosphereAntipodeB = 3;
inline constexpr double kIcosphereAntipodalDistance = 3.3187961651320244;
// Smallest generalized eigenvalues of (W, M), scipy.linalg.eigh.
inline constexpr double kIcosphereEigenvalues[10] = {
    0.0,                1.9999918870300084, 1.9999918870300084, 1.9999918870300084, 5.9658579107170588,
    5.9658579107170588, 5.9658579107170588, 5.9658579107171317, 5.9658579107171317, 11.826990245264129};

}  // namespace oracle

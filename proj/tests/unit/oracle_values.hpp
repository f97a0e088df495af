#pragma once

// Generated by tests/oracles/scalar_oracles.py (mpmath, 50 digits). Do not edit.

namespace oracle {

inline constexpr double kPhi1 = 0.57233076833850891;
inline constexpr double kPhi2 = 0.14939729593859562;
inline constexpr double kPhi1000 = 3.6631241611928878e-6;
inline constexpr double kInvGamma1mAlpha = 0.42766923166149109;
inline constexpr double kBeta = 27.558293707577726;
inline constexpr double kMu = 26.859171658687560;
inline constexpr double kXi = 0.12420785804816223;
inline constexpr double kATau320 = 0.99720226218171284;
inline constexpr double kMuTau320 = 3.0000992546465827;
inline constexpr double kCTau320 = 2.9142138109618329e-6;
inline constexpr double kW1 = 0.019984721172326909;
inline constexpr double kW2 = 0.0052166744623915625;
inline constexpr double kBaseline1 = 136.19195873334374;
inline constexpr double kBaseline2 = 59.962756137786995;
inline constexpr double kSingleStepPrice = 100.06779017570137;
inline constexpr double kMl062062m005 = 0.63953138201507100;
inline constexpr double kMl0621m01 = 0.89672251810022376;
inline constexpr double kMl0622m01 = 0.93487391171788741;
inline constexpr double kMl0625m3 = 1403.0344924901481;
inline constexpr double kF1 = 0.10327748189977624;
inline constexpr double kF1Quadrature = 0.10327748189977624;
inline constexpr double kKernelEnergy = 0.018348136134557439;
inline constexpr double kFLarge = 0.98646083731082734;
inline constexpr double kBsAtm = 7.9655674554057963;
inline constexpr double kBsPut90 = 3.9898332972120498;
inline constexpr double kHestonScaled80 = 21.882194231161134;
inline constexpr double kHestonScaled100 = 9.0983077219686803;
inline constexpr double kHestonScaled120 = 2.8848793031383366;
inline constexpr double kHestonRaw100 = 8.3005349695034210;

}  // namespace oracle

#pragma once

// Values frozen from tests/oracles/oracle_values.py (mpmath closed forms and
// a cvxpy convex program for the constrained discrete RDFs).

namespace oracle {

inline constexpr double hb_01 = 0.468995593589281;
inline constexpr double hb_025 = 0.811278124459133;
inline constexpr double bsc_secrecy = 0.455823111383749;  // H_b(0.34) - H_b(0.1)
inline constexpr double bsc_capacity = 0.531004406410719;
inline constexpr double C_main = 1.72971580931865;
inline constexpr double C_s1 = 0.937234558958071;
inline constexpr double I_XZ = 0.792481250360578;
inline constexpr double case1_floor = 0.34;
inline constexpr double h_S = 1.78980899876576;
inline constexpr double h_SU = 3.31599449609909;
inline constexpr double R_u_06 = 0.368482797083103;
inline constexpr double R_s_case2_05 = 0.242713413585121;
inline constexpr double R_s_case1_05 = 0.584962500721156;
inline constexpr double joint_case2_05_06 = 0.384893953593007;
inline constexpr double min_r_none = 0.222518607692336;
inline constexpr double min_r_semantic = 0.258967631171163;
inline constexpr double delta_s_cap_case2 = 2.48433014413871;
inline constexpr double binary_Rsi_03 = 0.531004406410719;
inline constexpr double binary_obs_025_01 = 0.342282530869852;
inline constexpr double binary_delta_s_max = 0.92481870497303;
inline constexpr double binary_min_r_none = 1.0;
inline constexpr double binary_min_r_full = 1.16493524165271;

// Convex-program RDFs, doubly symmetric and asymmetric 2x2 sources.
inline constexpr double case1_dsbs25_03_025 = 0.5310043913;
inline constexpr double case2_dsbs25_03_025 = 0.2158162890;
inline constexpr double case2_dsbs25_05_025 = 0.1887218736;
inline constexpr double case2_dsbs10_02_005 = 0.7136030380;
inline constexpr double case1_asym_03_02 = 0.9709504198;
inline constexpr double case2_asym_025_015 = 0.4450568367;
inline constexpr double classic_b025_01 = 0.3422825230;

}  // namespace oracle

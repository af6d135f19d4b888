#pragma once

// Reference stage counts per step for orders P = 2..13. Columns: alpha-DeC
// (and alpha-DeCu), alpha-DeCdu, bDeC, bDeCu, bDeCdu.

#include <array>

namespace reference {

struct StageRow {
  int P, M, alpha_dec, alpha_dec_du, bdec, bdec_u, bdec_du;
  double speedup_alpha_du, speedup_bu, speedup_bdu;
};

inline constexpr std::array<StageRow, 12> kEquispaced{{
    {2, 1, 2, 2, 2, 2, 2, 1.000, 1.000, 1.000},
    {3, 2, 6, 5, 5, 5, 4, 1.200, 1.000, 1.250},
    {4, 3, 12, 9, 10, 9, 7, 1.333, 1.111, 1.429},
    {5, 4, 20, 14, 17, 14, 11, 1.429, 1.214, 1.545},
    {6, 5, 30, 20, 26, 20, 16, 1.500, 1.300, 1.625},
    {7, 6, 42, 27, 37, 27, 22, 1.556, 1.370, 1.682},
    {8, 7, 56, 35, 50, 35, 29, 1.600, 1.429, 1.724},
    {9, 8, 72, 44, 65, 44, 37, 1.636, 1.477, 1.757},
    {10, 9, 90, 54, 82, 54, 46, 1.667, 1.519, 1.783},
    {11, 10, 110, 65, 101, 65, 56, 1.692, 1.554, 1.804},
    {12, 11, 132, 77, 122, 77, 67, 1.714, 1.584, 1.821},
    {13, 12, 156, 90, 145, 90, 79, 1.733, 1.611, 1.835},
}};

inline constexpr std::array<StageRow, 12> kGaussLobatto{{
    {2, 1, 2, 2, 2, 2, 2, 1.000, 1.000, 1.000},
    {3, 2, 6, 5, 5, 5, 4, 1.200, 1.000, 1.250},
    {4, 2, 8, 7, 7, 7, 6, 1.143, 1.000, 1.167},
    {5, 3, 15, 12, 13, 12, 10, 1.250, 1.083, 1.300},
    {6, 3, 18, 15, 16, 15, 13, 1.200, 1.067, 1.231},
    {7, 4, 28, 22, 25, 22, 19, 1.273, 1.136, 1.316},
    {8, 4, 32, 26, 29, 26, 23, 1.231, 1.115, 1.261},
    {9, 5, 45, 35, 41, 35, 31, 1.286, 1.171, 1.323},
    {10, 5, 50, 40, 46, 40, 36, 1.250, 1.150, 1.278},
    {11, 6, 66, 51, 61, 51, 46, 1.294, 1.196, 1.326},
    {12, 6, 72, 57, 67, 57, 52, 1.263, 1.175, 1.288},
    {13, 7, 91, 70, 85, 70, 64, 1.300, 1.214, 1.328},
}};

}  // namespace reference

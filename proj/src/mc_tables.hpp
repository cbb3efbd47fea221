// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace sceneforge::mc {

// Corner numbering: 0:(0,0,0) 1:(1,0,0) 2:(1,1,0) 3:(0,1,0)
//                   4:(0,0,1) 5:(1,0,1) 6:(1,1,1) 7:(0,1,1)
// Edge e connects corner kEdgeCorners[e][0] to kEdgeCorners[e][1].
inline constexpr int kEdgeCorners[12][2] = {
    {0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
    {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7},
};

inline constexpr int kCornerOffset[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
};

// Triangulation per sign configuration, triples of edge indices, -1 ends the
// list. The classic Lorensen-Cline table.
extern const int8_t kTriTable[256][16];

// Bitmask of edges crossed per configuration, derived from kTriTable.
const std::array<uint16_t, 256>& edge_table();

}  // namespace sceneforge::mc

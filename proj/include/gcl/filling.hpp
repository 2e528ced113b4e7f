#pragma once

#include <string>
#include <vector>

#include "gcl/diagram.hpp"

namespace gcl {

// Boxes (a, b..b+k-1) and (a..a+k-1, b): corner at (a,b), one arm up, one arm
// right, each k boxes long.
struct LBlock {
    int k = 1;
    int a = 1;
    int b = 1;

    bool operator==(const LBlock& o) const { return k == o.k && a == o.a && b == o.b; }
};

struct LBlockFilling {
    std::vector<LBlock> blocks;  // sorted (k descending, a, b)
    int board_area = 0;          // in-board boxes
    int covered = 0;             // boxes covered by at least one block
    bool overlapping = false;    // some box covered twice

    int torus_rank() const;  // number of k = 1 blocks
};

// Every block whose interior crosses no face edge and whose rightmost and top
// sides are face edges.
LBlockFilling fill_l_blocks(const LadderDiagram& d, const LadderFace& f);

// The fiber over the face's relative interior is Lagrangian exactly when the
// filling covers the whole board.
bool is_lagrangian(const LBlockFilling& fill);
bool is_lagrangian(const LadderDiagram& d, const LadderFace& f);

struct FiberTopology {
    int torus_rank = 0;
    std::vector<int> spheres;  // 2k-1 per k >= 2 block, ascending
    // Bundle stage l (= 2..n) collects the spheres of blocks with a+b+k = l+1;
    // dims per stage, descending, S^1 factors included.
    std::vector<std::vector<int>> levels;
    std::string label;  // "T^r", "U(m)", or "T^r x S^3 x ..."
};

// Requires a Lagrangian face (InputError otherwise).  The torus rank always
// equals the face dimension; a mismatch is an InternalError.
FiberTopology fiber_topology(const LadderDiagram& d, const LadderFace& f);

// "Lk@(a,b)" tokens in block order, semicolon-joined; empty string for none.
std::string serialize_filling(const LBlockFilling& fill);

}  // namespace gcl

#include "gcl/filling.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "gcl/error.hpp"

namespace gcl {

int LBlockFilling::torus_rank() const {
    int r = 0;
    for (const LBlock& blk : blocks)
        if (blk.k == 1) ++r;
    return r;
}

LBlockFilling fill_l_blocks(const LadderDiagram& d, const LadderFace& f) {
    if (f.edges.size_bits() != d.edge_count())
        throw UsageError("filling: face belongs to a different diagram");

    auto present = [&](int x, int y, Orient o) {
        int idx = d.edge_index(Edge{x, y, o});
        if (idx < 0) throw InternalError("filling: side of an in-board box is not a diagram edge");
        return f.edges.test(idx);
    };

    LBlockFilling fill;
    std::map<std::pair<int, int>, int> cover;
    for (const auto& box : d.board_boxes()) cover[box] = 0;
    fill.board_area = static_cast<int>(cover.size());

    for (const auto& [a, b] : d.board_boxes()) {
        for (int k = 1;; ++k) {
            if (!d.in_board(a + k - 1, b) || !d.in_board(a, b + k - 1)) break;
            bool ok = true;
            // Interior edges would be walls crossing the block.
            for (int j = b; ok && j <= b + k - 2; ++j) ok = !present(a - 1, j, Orient::H);
            for (int x = a; ok && x <= a + k - 2; ++x) ok = !present(x, b - 1, Orient::V);
            if (!ok) break;  // an interior wall also blocks every larger k
            if (present(a + k - 1, b - 1, Orient::V) && present(a - 1, b + k - 1, Orient::H)) {
                fill.blocks.push_back(LBlock{k, a, b});
                for (int p = 0; p < k; ++p) {
                    ++cover[{a, b + p}];
                    ++cover[{a + p, b}];
                }
                --cover[{a, b}];  // both arms count the corner box
            }
        }
    }

    for (const auto& [box, c] : cover) {
        if (c >= 1) ++fill.covered;
        if (c >= 2) fill.overlapping = true;
    }
    std::sort(fill.blocks.begin(), fill.blocks.end(), [](const LBlock& x, const LBlock& y) {
        if (x.k != y.k) return x.k > y.k;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return fill;
}

bool is_lagrangian(const LBlockFilling& fill) { return fill.covered == fill.board_area; }

bool is_lagrangian(const LadderDiagram& d, const LadderFace& f) {
    return is_lagrangian(fill_l_blocks(d, f));
}

FiberTopology fiber_topology(const LadderDiagram& d, const LadderFace& f) {
    LBlockFilling fill = fill_l_blocks(d, f);
    if (fill.overlapping) throw InternalError("filling: blocks overlap");
    if (!is_lagrangian(fill)) throw InputError("fiber topology requires a Lagrangian face");

    FiberTopology topo;
    topo.torus_rank = fill.torus_rank();
    if (topo.torus_rank != f.dimension)
        throw InternalError("filling: torus rank disagrees with face dimension");

    for (const LBlock& blk : fill.blocks)
        if (blk.k >= 2) topo.spheres.push_back(2 * blk.k - 1);
    std::sort(topo.spheres.begin(), topo.spheres.end());

    topo.levels.assign(static_cast<std::size_t>(std::max(0, d.n() - 1)), {});
    for (const LBlock& blk : fill.blocks) {
        int level = blk.a + blk.b + blk.k - 1;  // stage l with a+b+k = l+1
        if (level < 2 || level > d.n()) throw InternalError("filling: block outside bundle stages");
        topo.levels[static_cast<std::size_t>(level - 2)].push_back(2 * blk.k - 1);
    }
    for (auto& lv : topo.levels) std::sort(lv.begin(), lv.end(), std::greater<int>());

    const int m = static_cast<int>(fill.blocks.size());
    if (m >= 2) {
        bool nested = true;
        for (int t = 1; t <= m && nested; ++t)
            nested = fill.blocks[static_cast<std::size_t>(t - 1)] == LBlock{m + 1 - t, t, t};
        if (nested) {
            topo.label = "U(" + std::to_string(m) + ")";
            return topo;
        }
    }
    std::string label;
    if (topo.torus_rank >= 1) label = "T^" + std::to_string(topo.torus_rank);
    for (int s : topo.spheres) {
        if (!label.empty()) label += " x ";
        label += "S^" + std::to_string(s);
    }
    topo.label = label;
    return topo;
}

std::string serialize_filling(const LBlockFilling& fill) {
    std::string out;
    for (std::size_t i = 0; i < fill.blocks.size(); ++i) {
        if (i) out += ';';
        const LBlock& blk = fill.blocks[i];
        out += "L" + std::to_string(blk.k) + "@(" + std::to_string(blk.a) + "," +
               std::to_string(blk.b) + ")";
    }
    return out;
}

}  // namespace gcl

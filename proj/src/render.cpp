#include "gcl/render.hpp"

#include <map>
#include <vector>

#include "gcl/error.hpp"

namespace gcl {

namespace {

std::string render_grid(const LadderDiagram& d, const EdgeSet& edges,
                        const std::map<std::pair<int, int>, char>& overlay) {
    if (edges.size_bits() != d.edge_count())
        throw UsageError("render: edge set belongs to a different diagram");
    const int n = d.n();
    const int width = 4 * n + 1;
    const int height = 2 * n + 1;
    std::vector<std::string> grid(static_cast<std::size_t>(height),
                                  std::string(static_cast<std::size_t>(width), ' '));
    auto row_of = [&](int y) { return static_cast<std::size_t>(2 * (n - y)); };

    for (const auto& [x, y] : d.vertices) grid[row_of(y)][static_cast<std::size_t>(4 * x)] = '+';
    for (int e = 0; e < d.edge_count(); ++e) {
        if (!edges.test(e)) continue;
        const Edge& ed = d.edges[static_cast<std::size_t>(e)];
        if (ed.o == Orient::H) {
            for (int t = 1; t <= 3; ++t)
                grid[row_of(ed.y)][static_cast<std::size_t>(4 * ed.x + t)] = '#';
        } else {
            grid[row_of(ed.y) - 1][static_cast<std::size_t>(4 * ed.x)] = '#';
        }
    }
    for (const auto& [box, ch] : overlay) {
        const auto& [i, j] = box;
        grid[row_of(j) + 1][static_cast<std::size_t>(4 * i - 2)] = ch;
    }

    std::string out;
    bool started = false;  // rows above the tallest strip stay blank; skip them
    for (const std::string& line : grid) {
        std::size_t end = line.find_last_not_of(' ');
        if (end == std::string::npos) {
            if (started) out += '\n';
            continue;
        }
        started = true;
        out += line.substr(0, end + 1);
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_edges(const LadderDiagram& d, const EdgeSet& edges) {
    return render_grid(d, edges, {});
}

std::string render_diagram(const LadderDiagram& d) { return render_grid(d, d.full_edge_set(), {}); }

std::string render_filling(const LadderDiagram& d, const LadderFace& f, const LBlockFilling& fill) {
    static const std::string letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
    std::map<std::pair<int, int>, char> overlay;
    for (std::size_t k = 0; k < fill.blocks.size(); ++k) {
        const LBlock& blk = fill.blocks[k];
        const char ch = letters[k % letters.size()];
        for (int p = 0; p < blk.k; ++p) {
            overlay[{blk.a, blk.b + p}] = ch;
            overlay[{blk.a + p, blk.b}] = ch;
        }
    }
    return render_grid(d, f.edges, overlay);
}

}  // namespace gcl

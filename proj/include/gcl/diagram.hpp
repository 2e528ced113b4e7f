#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gcl/shape.hpp"

namespace gcl {

// Lattice edge.  H spans (x,y)-(x+1,y), V spans (x,y)-(x,y+1).
enum class Orient : std::uint8_t { H, V };

struct Edge {
    int x = 0;
    int y = 0;
    Orient o = Orient::H;

    bool operator==(const Edge& e) const { return x == e.x && y == e.y && o == e.o; }
    // Canonical order (x, y, o) with H before V; fixes every serialization.
    bool operator<(const Edge& e) const {
        if (x != e.x) return x < e.x;
        if (y != e.y) return y < e.y;
        return static_cast<int>(o) < static_cast<int>(e.o);
    }
};

inline Edge hedge(int x, int y) { return Edge{x, y, Orient::H}; }
inline Edge vedge(int x, int y) { return Edge{x, y, Orient::V}; }

// Bitset keyed by a diagram's canonical edge indexing.
class EdgeSet {
  public:
    EdgeSet() = default;
    explicit EdgeSet(int nbits)
        : nbits_(nbits), words_(static_cast<std::size_t>((nbits + 63) / 64), 0) {}

    int size_bits() const { return nbits_; }

    void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
    }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    EdgeSet& operator|=(const EdgeSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    bool contains(const EdgeSet& sub) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((sub.words_[k] & ~words_[k]) != 0) return false;
        return true;
    }

    bool operator==(const EdgeSet& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

    std::size_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(nbits_));
    }

  private:
    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct EdgeSetHash {
    std::size_t operator()(const EdgeSet& s) const { return s.hash(); }
};

struct LadderDiagram {
    FlagShape shape;
    std::vector<std::pair<int, int>> vertices;  // sorted (x, y)
    std::vector<Edge> edges;                    // canonical (x, y, o) order
    std::vector<std::pair<int, int>> tops;      // (n_j, n - n_j), j = 1..r

    int n() const { return shape.n; }
    int edge_count() const { return static_cast<int>(edges.size()); }

    bool has_vertex(int x, int y) const;
    // Unit box [i-1,i] x [j-1,j]; geometric in-board test.
    bool in_board(int i, int j) const;
    // All in-board boxes, row-major by (i, j); its size is dim of the polytope.
    std::vector<std::pair<int, int>> board_boxes() const;
    int edge_index(const Edge& e) const;  // -1 when absent
    EdgeSet full_edge_set() const;
};

LadderDiagram build_ladder(const FlagShape& shape);

// A face is a subgraph representable as a union of positive paths that
// contains every top vertex.  Kept canonically sorted; `id` is bit-exact
// across runs.
struct LadderFace {
    EdgeSet edges;
    int dimension = 0;  // |E| - |V| + 1 of the subgraph
    std::string id;
};

// Face membership test: all tops appear as endpoints and every edge lies on a
// monotone origin-to-top path inside the subgraph.
bool is_face_edge_set(const LadderDiagram& d, const EdgeSet& s);

// Validates membership, computes dimension and id; InputError otherwise.
LadderFace make_face(const LadderDiagram& d, const EdgeSet& s);

std::string face_id(const LadderDiagram& d, const EdgeSet& s);

// All monotone origin-to-top lattice paths along diagram edges, in DFS order
// (right before up).  Each entry is a single path, not a face.
std::vector<EdgeSet> positive_paths(const LadderDiagram& d);

struct EnumerationGuard {
    std::size_t max_subgraphs = 500000;
    double max_seconds = 600.0;  // soft budget; aborts with no partial output
};

// Union-closure of the positive paths filtered to all-tops subgraphs,
// sorted by (dimension, id).
std::vector<LadderFace> enumerate_faces(const LadderDiagram& d,
                                        const EnumerationGuard& guard = {});

int face_dimension(const LadderFace& f);

// Edge-set containment; UsageError when the faces index different diagrams.
bool face_contains(const LadderFace& outer, const LadderFace& inner);

// Removes edges lying on no monotone origin-to-top path inside the subgraph,
// iterating to a fixpoint.  The result may still fail the all-tops test.
EdgeSet prune_to_positive_paths(const LadderDiagram& d, EdgeSet s);

// The comb-shaped vertex face associated with the in-board box (a,b): trunk
// (0,0)-(0,b-1), a bar at height b-1 out to the last break before column
// n+1-b, full teeth up to each top behind it, and low runs to the remaining
// tops.  Zero bounded regions.
LadderFace comb_vertex(const LadderDiagram& d, int a, int b);

}  // namespace gcl

#include "gcl/diagram.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_set>

#include "gcl/error.hpp"

namespace gcl {

namespace {

int vertex_id(const LadderDiagram& d, int x, int y) {
    const std::pair<int, int> key{x, y};
    const auto it = std::lower_bound(d.vertices.begin(), d.vertices.end(), key);
    if (it == d.vertices.end() || *it != key) return -1;
    return static_cast<int>(it - d.vertices.begin());
}

// Directed view of the diagram: H goes right, V goes up, so every walk along
// oriented edges is a monotone path.
struct DirectedView {
    std::vector<int> tail;  // per edge index
    std::vector<int> head;
    std::vector<int> top_ids;
    int origin = -1;
    int nv = 0;
};

DirectedView directed_view(const LadderDiagram& d) {
    DirectedView v;
    v.nv = static_cast<int>(d.vertices.size());
    v.origin = vertex_id(d, 0, 0);
    v.tail.reserve(d.edges.size());
    v.head.reserve(d.edges.size());
    for (const Edge& e : d.edges) {
        v.tail.push_back(vertex_id(d, e.x, e.y));
        v.head.push_back(e.o == Orient::H ? vertex_id(d, e.x + 1, e.y)
                                          : vertex_id(d, e.x, e.y + 1));
    }
    for (const auto& t : d.tops) v.top_ids.push_back(vertex_id(d, t.first, t.second));
    return v;
}

// Core membership test.  A subgraph is a face iff all tops appear among its
// endpoints and every edge lies on some monotone origin-to-top path inside
// the subgraph (tail forward-reachable, head backward-reachable).
bool face_check(const LadderDiagram& d, const DirectedView& dv, const EdgeSet& s,
                int* out_vertex_count) {
    if (s.size_bits() != d.edge_count()) throw UsageError("face: edge set indexes a different diagram");

    std::vector<char> used(static_cast<std::size_t>(dv.nv), 0);
    std::vector<int> present;
    for (int e = 0; e < d.edge_count(); ++e) {
        if (!s.test(e)) continue;
        present.push_back(e);
        used[static_cast<std::size_t>(dv.tail[e])] = 1;
        used[static_cast<std::size_t>(dv.head[e])] = 1;
    }
    for (int t : dv.top_ids)
        if (!used[static_cast<std::size_t>(t)]) return false;

    std::vector<char> fwd(static_cast<std::size_t>(dv.nv), 0);
    std::vector<char> bwd(static_cast<std::size_t>(dv.nv), 0);
    fwd[static_cast<std::size_t>(dv.origin)] = 1;
    for (int t : dv.top_ids) bwd[static_cast<std::size_t>(t)] = 1;

    // Edges only point in increasing (x, y); sweeping the canonically sorted
    // edge list forward settles reachability from the origin in one pass, and
    // sweeping backward settles co-reachability of the tops.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e : present)
            if (fwd[static_cast<std::size_t>(dv.tail[e])] && !fwd[static_cast<std::size_t>(dv.head[e])]) {
                fwd[static_cast<std::size_t>(dv.head[e])] = 1;
                changed = true;
            }
    }
    changed = true;
    while (changed) {
        changed = false;
        for (auto it = present.rbegin(); it != present.rend(); ++it)
            if (bwd[static_cast<std::size_t>(dv.head[*it])] && !bwd[static_cast<std::size_t>(dv.tail[*it])]) {
                bwd[static_cast<std::size_t>(dv.tail[*it])] = 1;
                changed = true;
            }
    }
    for (int e : present)
        if (!fwd[static_cast<std::size_t>(dv.tail[e])] || !bwd[static_cast<std::size_t>(dv.head[e])]) return false;

    if (out_vertex_count) {
        int c = 0;
        for (char u : used) c += u;
        *out_vertex_count = c;
    }
    return true;
}

LadderFace make_face_with_view(const LadderDiagram& d, const DirectedView& dv, const EdgeSet& s) {
    int nv = 0;
    if (!face_check(d, dv, s, &nv)) throw InputError("face: edge set is not a union of positive paths through all tops");
    LadderFace f;
    f.edges = s;
    f.dimension = s.count() - nv + 1;
    f.id = face_id(d, s);
    return f;
}

bool any_common(const EdgeSet& a, const EdgeSet& b, const LadderDiagram& d) {
    for (int e = 0; e < d.edge_count(); ++e)
        if (a.test(e) && b.test(e)) return true;
    return false;
}

}  // namespace

bool LadderDiagram::has_vertex(int x, int y) const {
    return vertex_id(*this, x, y) >= 0;
}

bool LadderDiagram::in_board(int i, int j) const {
    if (i < 1 || j < 1) return false;
    for (int s = 0; s + 1 <= shape.rank(); ++s)
        if (shape.step(s) < i && i <= shape.step(s + 1) && j <= n() - shape.step(s + 1)) return true;
    return false;
}

std::vector<std::pair<int, int>> LadderDiagram::board_boxes() const {
    std::vector<std::pair<int, int>> boxes;
    for (int i = 1; i <= n(); ++i)
        for (int j = 1; j <= n(); ++j)
            if (in_board(i, j)) boxes.emplace_back(i, j);
    return boxes;
}

int LadderDiagram::edge_index(const Edge& e) const {
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || !(*it == e)) return -1;
    return static_cast<int>(it - edges.begin());
}

EdgeSet LadderDiagram::full_edge_set() const {
    EdgeSet s(edge_count());
    for (int e = 0; e < edge_count(); ++e) s.set(e);
    return s;
}

LadderDiagram build_ladder(const FlagShape& shape) {
    LadderDiagram d;
    d.shape = shape;
    const int n = shape.n;

    std::set<std::pair<int, int>> verts;
    for (int j = 0; j + 1 <= shape.rank(); ++j) {
        // Strip [n_j, n_{j+1}] x [0, n - n_{j+1}]; the degenerate width-zero
        // strip beyond the last break carries no boxes and is omitted.
        for (int x = shape.step(j); x <= shape.step(j + 1); ++x)
            for (int y = 0; y <= n - shape.step(j + 1); ++y) verts.insert({x, y});
    }
    d.vertices.assign(verts.begin(), verts.end());

    for (const auto& [x, y] : d.vertices) {
        if (verts.count({x + 1, y})) d.edges.push_back(hedge(x, y));
        if (verts.count({x, y + 1})) d.edges.push_back(vedge(x, y));
    }
    std::sort(d.edges.begin(), d.edges.end());

    for (const auto& v : d.vertices)
        if (v.first + v.second == n) d.tops.push_back(v);
    if (d.tops.empty()) throw InternalError("ladder: no top vertices");
    return d;
}

bool is_face_edge_set(const LadderDiagram& d, const EdgeSet& s) {
    const DirectedView dv = directed_view(d);
    return face_check(d, dv, s, nullptr);
}

LadderFace make_face(const LadderDiagram& d, const EdgeSet& s) {
    return make_face_with_view(d, directed_view(d), s);
}

std::string face_id(const LadderDiagram& d, const EdgeSet& s) {
    std::string id;
    for (int e = 0; e < d.edge_count(); ++e) {
        if (!s.test(e)) continue;
        const Edge& ed = d.edges[static_cast<std::size_t>(e)];
        if (!id.empty()) id += ';';
        id += (ed.o == Orient::H) ? 'H' : 'V';
        id += ':';
        id += std::to_string(ed.x);
        id += ',';
        id += std::to_string(ed.y);
    }
    return id;
}

std::vector<EdgeSet> positive_paths(const LadderDiagram& d) {
    std::vector<EdgeSet> out;
    EdgeSet cur(d.edge_count());
    const int n = d.n();

    // Tops are the vertices at taxicab distance n, so no edge leaves them and
    // every monotone walk from the origin ends at one.
    auto dfs = [&](auto&& self, int x, int y) -> void {
        if (x + y == n) {
            out.push_back(cur);
            return;
        }
        const int h = d.edge_index(hedge(x, y));
        if (h >= 0) {
            cur.set(h);
            self(self, x + 1, y);
            cur.reset(h);
        }
        const int v = d.edge_index(vedge(x, y));
        if (v >= 0) {
            cur.set(v);
            self(self, x, y + 1);
            cur.reset(v);
        }
    };
    dfs(dfs, 0, 0);
    return out;
}

std::vector<LadderFace> enumerate_faces(const LadderDiagram& d, const EnumerationGuard& guard) {
    const DirectedView dv = directed_view(d);
    const std::vector<EdgeSet> paths = positive_paths(d);

    // Incident diagram edges per top, for the cheap all-tops filter.
    std::vector<EdgeSet> top_incident;
    for (int t : dv.top_ids) {
        EdgeSet inc(d.edge_count());
        for (int e = 0; e < d.edge_count(); ++e)
            if (dv.tail[e] == t || dv.head[e] == t) inc.set(e);
        top_incident.push_back(std::move(inc));
    }

    const auto start = std::chrono::steady_clock::now();
    std::size_t ops = 0;
    auto check_budget = [&]() {
        if ((++ops & 4095) != 0) return;
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > guard.max_seconds)
            throw LimitError("enumerate_faces: soft time budget exceeded");
    };

    std::unordered_set<EdgeSet, EdgeSetHash> family(paths.begin(), paths.end());
    std::vector<EdgeSet> work(family.begin(), family.end());
    while (!work.empty()) {
        const EdgeSet cur = std::move(work.back());
        work.pop_back();
        for (const EdgeSet& p : paths) {
            check_budget();
            EdgeSet u = cur;
            u |= p;
            if (family.insert(u).second) {
                if (family.size() > guard.max_subgraphs)
                    throw LimitError("enumerate_faces: subgraph guard exceeded");
                work.push_back(std::move(u));
            }
        }
    }

    std::vector<LadderFace> faces;
    for (const EdgeSet& s : family) {
        bool all_tops = true;
        for (const EdgeSet& inc : top_incident)
            if (!any_common(s, inc, d)) {
                all_tops = false;
                break;
            }
        if (all_tops) faces.push_back(make_face_with_view(d, dv, s));
    }
    std::sort(faces.begin(), faces.end(), [](const LadderFace& a, const LadderFace& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        return a.id < b.id;
    });
    return faces;
}

EdgeSet prune_to_positive_paths(const LadderDiagram& d, EdgeSet s) {
    const DirectedView dv = directed_view(d);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<char> fwd(static_cast<std::size_t>(dv.nv), 0);
        std::vector<char> bwd(static_cast<std::size_t>(dv.nv), 0);
        fwd[static_cast<std::size_t>(dv.origin)] = 1;
        for (int t : dv.top_ids) bwd[static_cast<std::size_t>(t)] = 1;
        bool more = true;
        while (more) {
            more = false;
            for (int e = 0; e < d.edge_count(); ++e)
                if (s.test(e) && fwd[static_cast<std::size_t>(dv.tail[e])] &&
                    !fwd[static_cast<std::size_t>(dv.head[e])]) {
                    fwd[static_cast<std::size_t>(dv.head[e])] = 1;
                    more = true;
                }
        }
        more = true;
        while (more) {
            more = false;
            for (int e = 0; e < d.edge_count(); ++e)
                if (s.test(e) && bwd[static_cast<std::size_t>(dv.head[e])] &&
                    !bwd[static_cast<std::size_t>(dv.tail[e])]) {
                    bwd[static_cast<std::size_t>(dv.tail[e])] = 1;
                    more = true;
                }
        }
        for (int e = 0; e < d.edge_count(); ++e)
            if (s.test(e) && (!fwd[static_cast<std::size_t>(dv.tail[e])] ||
                              !bwd[static_cast<std::size_t>(dv.head[e])])) {
                s.reset(e);
                changed = true;
            }
    }
    return s;
}

int face_dimension(const LadderFace& f) { return f.dimension; }

bool face_contains(const LadderFace& outer, const LadderFace& inner) {
    if (outer.edges.size_bits() != inner.edges.size_bits())
        throw UsageError("face_contains: faces of different diagrams");
    return outer.edges.contains(inner.edges);
}

LadderFace comb_vertex(const LadderDiagram& d, int a, int b) {
    if (!d.in_board(a, b)) throw InputError("comb_vertex: box out of board");
    const int n = d.n();
    const int r = d.shape.rank();

    // Largest break left of column n+1-b; b <= n - n_1 keeps s >= 1.
    int s = 0;
    for (int j = 1; j <= r; ++j)
        if (d.shape.step(j) < n + 1 - b) s = j;
    if (s < 1) throw InternalError("comb_vertex: no break before the pinned column");

    EdgeSet es(d.edge_count());
    auto add = [&](const Edge& e) {
        const int idx = d.edge_index(e);
        if (idx < 0) throw InternalError("comb_vertex: constructed edge outside the diagram");
        es.set(idx);
    };

    for (int y = 0; y <= b - 2; ++y) add(vedge(0, y));                       // trunk
    for (int x = 0; x < d.shape.step(s); ++x) add(hedge(x, b - 1));          // bar
    for (int j = 1; j <= s; ++j)                                             // teeth
        for (int y = b - 1; y < n - d.shape.step(j); ++y) add(vedge(d.shape.step(j), y));
    for (int j = s + 1; j <= r; ++j)                                         // low runs
        for (int x = 0; x < d.shape.step(j); ++x) add(hedge(x, n - d.shape.step(j)));

    LadderFace f = make_face(d, es);
    if (f.dimension != 0) throw InternalError("comb_vertex: comb bounds a region");
    return f;
}

}  // namespace gcl

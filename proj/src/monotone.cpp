#include "gcl/monotone.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

#include "gcl/error.hpp"

namespace gcl {

namespace {

long long num64(const Rational& r) { return to_int64(Rational(numerator(r))); }
long long den64(const Rational& r) { return to_int64(Rational(denominator(r))); }

struct BoxRegion {
    std::vector<std::pair<int, int>> boxes;  // sorted (i, j)
    bool escapes = false;                    // leaks through an absent edge
    std::vector<Rational> pins;              // distinct constants reached
    std::pair<int, int> generator{-1, -1};   // top-right box when bounded

    bool bounded() const { return !escapes && pins.empty(); }
};

// Components of the in-board boxes, merging across absent edges.  Each region
// records whether it leaks outside the pattern or into pinned constants.
std::vector<BoxRegion> cut_regions(const GCPolytope& P, const EdgeSet& fedges) {
    const LadderDiagram& d = P.diagram;
    if (fedges.size_bits() != d.edge_count())
        throw UsageError("regions: edge set belongs to a different diagram");

    const auto boxes = d.board_boxes();
    std::map<std::pair<int, int>, int> box_id;
    for (std::size_t k = 0; k < boxes.size(); ++k) box_id[boxes[k]] = static_cast<int>(k);

    std::vector<int> parent(boxes.size());
    for (std::size_t k = 0; k < boxes.size(); ++k) parent[k] = static_cast<int>(k);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };

    struct SideRef {
        Edge edge;
        int ni, nj;
    };
    auto sides_of = [](int i, int j) {
        return std::array<SideRef, 4>{{
            {hedge(i - 1, j), i, j + 1},      // top
            {hedge(i - 1, j - 1), i, j - 1},  // bottom
            {vedge(i - 1, j - 1), i - 1, j},  // left
            {vedge(i, j - 1), i + 1, j},      // right
        }};
    };

    auto absent = [&](const Edge& e) {
        int idx = d.edge_index(e);
        if (idx < 0) throw InternalError("regions: side of an in-board box is not a diagram edge");
        return !fedges.test(idx);
    };

    for (const auto& [i, j] : boxes)
        for (const SideRef& s : sides_of(i, j)) {
            if (!absent(s.edge)) continue;
            if (d.in_board(s.ni, s.nj)) {
                int x = find(box_id.at({i, j}));
                int y = find(box_id.at({s.ni, s.nj}));
                if (x != y) parent[static_cast<std::size_t>(y)] = x;
            }
        }

    std::map<int, BoxRegion> by_root;
    for (const auto& [i, j] : boxes) {
        BoxRegion& reg = by_root[find(box_id.at({i, j}))];
        reg.boxes.emplace_back(i, j);
        for (const SideRef& s : sides_of(i, j)) {
            if (!absent(s.edge)) continue;
            if (d.in_board(s.ni, s.nj)) continue;
            if (P.is_constant(s.ni, s.nj)) {
                Rational v = P.constant_value(s.ni, s.nj);
                if (std::find(reg.pins.begin(), reg.pins.end(), v) == reg.pins.end())
                    reg.pins.push_back(v);
            } else {
                reg.escapes = true;
            }
        }
    }

    std::vector<BoxRegion> out;
    out.reserve(by_root.size());
    for (auto& [root, reg] : by_root) {
        std::sort(reg.boxes.begin(), reg.boxes.end());
        if (reg.bounded()) {
            int best = -1, count = 0;
            for (const auto& [i, j] : reg.boxes) {
                if (i + j > best) {
                    best = i + j;
                    count = 1;
                    reg.generator = {i, j};
                } else if (i + j == best) {
                    ++count;
                }
            }
            if (count != 1)
                throw InternalError("regions: bounded region has no unique top-right box");
        }
        out.push_back(std::move(reg));
    }
    return out;
}

}  // namespace

std::vector<std::pair<int, int>> generator_indices(const GCPolytope& P, const LadderFace& f) {
    std::vector<std::pair<int, int>> gens;
    for (const BoxRegion& reg : cut_regions(P, f.edges))
        if (reg.bounded()) gens.push_back(reg.generator);
    std::sort(gens.begin(), gens.end(), [](const auto& x, const auto& y) {
        if (x.first + x.second != y.first + y.second)
            return x.first + x.second > y.first + y.second;
        return x.first < y.first;
    });
    if (static_cast<int>(gens.size()) != f.dimension)
        throw InternalError("regions: bounded region count disagrees with face dimension");
    return gens;
}

GCPoint face_center(const GCPolytope& P, const LadderFace& f) {
    std::vector<BoxRegion> regions = cut_regions(P, f.edges);
    std::map<std::pair<int, int>, Rational> value;
    for (const BoxRegion& reg : regions) {
        Rational v;
        if (reg.bounded()) {
            v = reg.generator.second - reg.generator.first;
        } else if (reg.pins.empty()) {
            throw InputError("center: a region of the face is pinned by no constant");
        } else if (reg.pins.size() > 1) {
            throw InputError("center: a region of the face is pinned by conflicting constants");
        } else {
            v = reg.pins.front();
        }
        for (const auto& box : reg.boxes) value[box] = v;
    }
    GCPoint u;
    u.coords.reserve(P.variables.size());
    for (const auto& var : P.variables) u.coords.push_back(value.at(var));
    if (!(carrier_face(P, u).edges == f.edges))
        throw InputError("center: face admits no canonical interior point");
    return u;
}

Rational partial_trace(const GCPolytope& P, const GCPoint& u, int a, int b) {
    if (a < 1 || b < 1 || a + b > P.n())
        throw InputError("partial trace: indices must satisfy a,b >= 1 and a+b <= n");
    Rational sum = 0;
    for (int i = 1; i <= a; ++i) sum += P.value_at(u, i, a + b - i);
    return sum;
}

int codim_max_component(const GCPolytope& P, int a, int b) {
    if (a < 1 || b < 1 || a + b > P.n())
        throw InputError("codim: indices must satisfy a,b >= 1 and a+b <= n");
    const GCPoint center = center_of_polytope(P);

    Rational c = 0;
    for (int i = 1; i <= a; ++i) c += P.lambda.values[static_cast<std::size_t>(i - 1)];
    Rational codim_r = 2 * (c - partial_trace(P, center, a, b));
    if (!is_integral(codim_r)) throw InternalError("codim: non-integral codimension");
    int codim = static_cast<int>(to_int64(codim_r));

    // Cut the face where the whole anti-diagonal through (a,b) is pinned: in
    // every strip met by columns 1..a, drop the edges that separate the
    // pinned entries from the constants above them.
    const FlagShape& shape = P.lambda.shape;
    int s = 0;
    while (shape.step(s + 1) < a) ++s;
    EdgeSet keep = P.diagram.full_edge_set();
    auto remove = [&](const Edge& e) {
        int idx = P.diagram.edge_index(e);
        if (idx < 0) throw InternalError("codim: cut formula names a missing edge");
        keep.reset(idx);
    };
    for (int k = 0; k <= s; ++k) {
        const int nk = shape.step(k);
        const int ntil = std::min(a, shape.step(k + 1));
        for (int j = a + b - ntil; j <= P.n() - shape.step(k + 1); ++j) {
            for (int i = nk + 1; i <= ntil - 1; ++i) remove(vedge(i, j - 1));
            for (int i = nk + 1; i <= ntil; ++i) remove(hedge(i - 1, j));
        }
    }
    LadderFace gamma = make_face(P.diagram, prune_to_positive_paths(P.diagram, keep));
    if (codim != 2 * (P.dim() - gamma.dimension))
        throw InternalError("codim: dimension drop of the cut face disagrees");

    // On the cut face the equalities alone must force each in-board
    // anti-diagonal entry to its eigenvalue.
    auto forced = forced_values(P, face_equalities(P, gamma));
    for (int i = 1; i <= a; ++i) {
        int v = P.var_index(i, a + b - i);
        if (v < 0) continue;
        const auto& val = forced[static_cast<std::size_t>(v)];
        if (!val || *val != P.lambda.values[static_cast<std::size_t>(i - 1)])
            throw InternalError("codim: anti-diagonal entry is not pinned to its eigenvalue");
    }
    return codim;
}

std::vector<DiscGenerator> disc_ledger(const GCPolytope& P, const LadderFace& f, const GCPoint& u) {
    if (!(carrier_face(P, u).edges == f.edges))
        throw InputError("ledger: point is not in the relative interior of the face");
    const GCPoint center = center_of_polytope(P);

    std::vector<DiscGenerator> out;
    for (const auto& [a, b] : generator_indices(P, f)) {
        if (b >= 2 && !(P.value_at(u, a, b) > P.value_at(u, a + 1, b - 1)))
            throw InputError("ledger: point leaves the smooth locus of a generator");
        DiscGenerator g;
        g.a = a;
        g.b = b;
        g.c = 0;
        for (int i = 1; i <= a; ++i) g.c += P.lambda.values[static_cast<std::size_t>(i - 1)];
        g.psi_center = partial_trace(P, center, a, b);
        g.psi_point = partial_trace(P, u, a, b);
        g.maslov = 2 * (g.c - g.psi_center);
        g.area = g.c - g.psi_point;
        g.monotone = g.maslov == 2 * g.area;
        out.push_back(std::move(g));
    }
    return out;
}

bool is_monotone_fiber(const GCPolytope& P, const LadderFace& f) {
    if (!is_lagrangian(P.diagram, f)) return false;
    GCPoint u = face_center(P, f);
    for (const DiscGenerator& g : disc_ledger(P, f, u))
        if (!g.monotone) return false;
    return true;
}

std::vector<MonotoneFiberReport> classify_monotone(const GCPolytope& P,
                                                   const EnumerationGuard& guard) {
    if (!is_monotone_normalized(P.lambda))
        throw InputError("classification requires the monotone-normalized spectrum");
    std::vector<MonotoneFiberReport> out;
    for (const LadderFace& f : enumerate_faces(P.diagram, guard)) {
        if (!is_lagrangian(P.diagram, f)) continue;
        MonotoneFiberReport r;
        r.face_id = f.id;
        r.dim = f.dimension;
        r.topology = fiber_topology(P.diagram, f);
        r.center = face_center(P, f);
        r.generators = disc_ledger(P, f, r.center);
        bool monotone = true;
        for (const DiscGenerator& g : r.generators) monotone = monotone && g.monotone;
        if (!monotone) continue;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const MonotoneFiberReport& x, const MonotoneFiberReport& y) {
        if (x.dim != y.dim) return x.dim > y.dim;
        return x.face_id < y.face_id;
    });
    return out;
}

long long maslov_from_weights(const std::vector<long long>& weights) {
    long long sum = 0;
    for (long long w : weights) sum += w;
    return -2 * sum;
}

CombIncidentData comb_incident_data(const GCPolytope& P, int a, int b) {
    const LadderDiagram& d = P.diagram;
    CombIncidentData data;
    data.comb = comb_vertex(d, a, b);
    data.vertex = face_center(P, data.comb);

    auto in_comb = [&](const Edge& e) {
        int idx = d.edge_index(e);
        if (idx < 0) throw InternalError("comb: side of an in-board box is not a diagram edge");
        return data.comb.edges.test(idx);
    };

    std::vector<BoxRegion> regions = cut_regions(P, data.comb.edges);
    struct Rect {
        int i0, i1, j0, j1;
        bool type_a;
        const BoxRegion* reg;
    };
    std::vector<Rect> rects;
    for (const BoxRegion& reg : regions) {
        Rect r{reg.boxes.front().first, reg.boxes.front().first, reg.boxes.front().second,
               reg.boxes.front().second, true, &reg};
        for (const auto& [i, j] : reg.boxes) {
            r.i0 = std::min(r.i0, i);
            r.i1 = std::max(r.i1, i);
            r.j0 = std::min(r.j0, j);
            r.j1 = std::max(r.j1, j);
        }
        const int w = r.i1 - r.i0 + 1, h = r.j1 - r.j0 + 1;
        if (static_cast<int>(reg.boxes.size()) != w * h)
            throw InternalError("comb: cut region is not a full rectangle");
        for (int i = r.i0; i <= r.i1; ++i)
            for (int j = r.j0; j <= r.j1 - 1; ++j)
                if (in_comb(hedge(i - 1, j))) throw InternalError("comb: wall inside a cut region");
        for (int i = r.i0; i <= r.i1 - 1; ++i)
            for (int j = r.j0; j <= r.j1; ++j)
                if (in_comb(vedge(i, j - 1))) throw InternalError("comb: wall inside a cut region");

        bool bottom = true, top = true, left = true, right = true;
        for (int i = r.i0; i <= r.i1; ++i) {
            bottom = bottom && in_comb(hedge(i - 1, r.j0 - 1));
            top = top && in_comb(hedge(i - 1, r.j1));
        }
        for (int j = r.j0; j <= r.j1; ++j) {
            left = left && in_comb(vedge(r.i0 - 1, j - 1));
            right = right && in_comb(vedge(r.i1, j - 1));
        }
        const bool is_a = bottom && right, is_b = top && left;
        if (is_a == is_b) throw InternalError("comb: cut region has no unique anchoring");
        r.type_a = is_a;
        rects.push_back(r);
    }
    std::sort(rects.begin(), rects.end(), [](const Rect& x, const Rect& y) {
        if (x.i0 != y.i0) return x.i0 < y.i0;
        return x.j0 < y.j0;
    });

    for (const Rect& r : rects) {
        data.regions.push_back(CombRegion{r.i0, r.i1, r.j0, r.j1, r.type_a});
        const int w = r.i1 - r.i0 + 1, h = r.j1 - r.j0 + 1;
        for (int p = 1; p <= w; ++p)
            for (int q = 1; q <= h; ++q) {
                CombBlockEdge e;
                e.type_a = r.type_a;
                e.p = p;
                e.q = q;
                std::set<std::pair<int, int>> boxset;
                if (r.type_a) {
                    e.corner = {r.i1, r.j0};
                    for (int i = r.i1 - p + 1; i <= r.i1; ++i) {
                        boxset.insert({i, r.j0});
                        if (!in_comb(hedge(i - 1, r.j0 - 1)))
                            throw InternalError("comb: block arm is not walled below");
                    }
                    for (int j = r.j0; j <= r.j0 + q - 1; ++j) {
                        boxset.insert({r.i1, j});
                        if (!in_comb(vedge(r.i1, j - 1)))
                            throw InternalError("comb: block arm is not walled on the right");
                    }
                } else {
                    e.corner = {r.i0, r.j1};
                    for (int i = r.i0; i <= r.i0 + p - 1; ++i) {
                        boxset.insert({i, r.j1});
                        if (!in_comb(hedge(i - 1, r.j1)))
                            throw InternalError("comb: block arm is not walled above");
                    }
                    for (int j = r.j1 - q + 1; j <= r.j1; ++j) {
                        boxset.insert({r.i0, j});
                        if (!in_comb(vedge(r.i0 - 1, j - 1)))
                            throw InternalError("comb: block arm is not walled on the left");
                    }
                }
                e.boxes.assign(boxset.begin(), boxset.end());

                // The incident edge keeps the comb and walls the block in.
                std::map<Edge, int> incidence;
                for (const auto& [i, j] : e.boxes) {
                    ++incidence[hedge(i - 1, j)];
                    ++incidence[hedge(i - 1, j - 1)];
                    ++incidence[vedge(i - 1, j - 1)];
                    ++incidence[vedge(i, j - 1)];
                }
                EdgeSet edges = data.comb.edges;
                for (const auto& [edge, cnt] : incidence) {
                    if (cnt != 1) continue;
                    int idx = d.edge_index(edge);
                    if (idx < 0) throw InternalError("comb: block boundary leaves the board");
                    edges.set(idx);
                }
                try {
                    e.face = make_face(d, edges);
                } catch (const InputError&) {
                    throw InternalError("comb: incident edge set is not a face");
                }
                if (e.face.dimension != 1)
                    throw InternalError("comb: incident face is not one-dimensional");
                int bounded_seen = 0;
                for (const BoxRegion& reg : cut_regions(P, e.face.edges)) {
                    if (!reg.bounded()) continue;
                    ++bounded_seen;
                    if (reg.boxes != e.boxes)
                        throw InternalError("comb: bounded region of the incident face is not the block");
                }
                if (bounded_seen != 1)
                    throw InternalError("comb: incident face needs exactly one bounded region");

                int hits = 0;
                for (const auto& [i, j] : e.boxes)
                    if (i <= a && j == a + b - i) ++hits;
                e.pairing = (r.type_a ? -1 : 1) * hits;
                if (e.pairing != 0 && e.pairing != -1)
                    throw InternalError("comb: pairing outside {0, -1}");
                data.edges.push_back(std::move(e));
            }
    }
    if (static_cast<int>(data.edges.size()) != P.dim())
        throw InternalError("comb: incident edge count disagrees with polytope dimension");
    return data;
}

nlohmann::ordered_json report_to_json(const GCPolytope& P, const MonotoneFiberReport& r) {
    nlohmann::ordered_json j;
    j["face_id"] = r.face_id;
    j["dim"] = r.dim;
    auto center = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < P.variables.size(); ++k) {
        nlohmann::ordered_json e;
        e["i"] = P.variables[k].first;
        e["j"] = P.variables[k].second;
        e["num"] = num64(r.center.coords[k]);
        e["den"] = den64(r.center.coords[k]);
        center.push_back(std::move(e));
    }
    j["center"] = std::move(center);
    nlohmann::ordered_json topo;
    topo["torus_rank"] = r.topology.torus_rank;
    topo["spheres"] = r.topology.spheres;
    topo["label"] = r.topology.label;
    j["topology"] = std::move(topo);
    auto gens = nlohmann::ordered_json::array();
    for (const DiscGenerator& g : r.generators) {
        nlohmann::ordered_json e;
        e["a"] = g.a;
        e["b"] = g.b;
        e["c"] = to_fraction(g.c);
        e["psi_center"] = to_fraction(g.psi_center);
        e["psi_point"] = to_fraction(g.psi_point);
        e["maslov"] = to_int64(g.maslov);
        e["area_num"] = num64(g.area);
        e["area_den"] = den64(g.area);
        gens.push_back(std::move(e));
    }
    j["generators"] = std::move(gens);
    return j;
}

}  // namespace gcl

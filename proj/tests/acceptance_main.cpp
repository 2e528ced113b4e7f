// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gcl/cli.hpp"
#include "gcl/error.hpp"
#include "gcl/filling.hpp"
#include "gcl/monotone.hpp"
#include "gcl/oracle.hpp"
#include "gcl/polytope.hpp"

using namespace gcl;

namespace {

constexpr double kOracleTol = 1e-8;  // per-sample interlacing / trace slack
constexpr std::uint64_t kOracleSeed = 1;

struct Checker {
    std::vector<std::string> fails;

    void expect(bool ok, const std::string& what) {
        if (!ok) fails.push_back(what);
    }
};

GCPolytope shape_polytope(std::vector<int> steps, int n) {
    return build_polytope(monotone_spectrum(make_shape(std::move(steps), n)));
}

std::string shape_name(const std::vector<int>& steps, int n) {
    std::string s = "(";
    for (std::size_t k = 0; k < steps.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(steps[k]);
    }
    s += ";" + std::to_string(n) + ")";
    return s;
}

// Enumerations shared by the property criteria; built on first use.
struct ShapeCase {
    std::vector<int> steps;
    int n = 0;
    GCPolytope P;
    std::vector<LadderFace> faces;
};

std::vector<ShapeCase>& test_shapes() {
    static std::vector<ShapeCase> cases = [] {
        std::vector<ShapeCase> out;
        const std::vector<std::pair<std::vector<int>, int>> shape_args = {
            {{1, 2}, 3}, {{1, 2, 3, 4}, 5}, {{3}, 6}, {{2}, 4}, {{2}, 5}, {{1, 2, 3}, 4}};
        for (const auto& [steps, n] : shape_args) {
            ShapeCase c;
            c.steps = steps;
            c.n = n;
            c.P = shape_polytope(steps, n);
            c.faces = enumerate_faces(c.P.diagram);
            out.push_back(std::move(c));
        }
        return out;
    }();
    return cases;
}

// torus rank plus sphere dimension list, the label-free topology signature
using Signature = std::pair<int, std::vector<int>>;

Signature signature_of(const FiberTopology& t) { return {t.torus_rank, t.spheres}; }

// ---- criterion bodies -------------------------------------------------

void criterion_gr36(Checker& c) {
    auto t0 = std::chrono::steady_clock::now();
    GCPolytope P = shape_polytope({3}, 6);
    std::vector<MonotoneFiberReport> reports = classify_monotone(P);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    c.expect(reports.size() == 7,
             "expected 7 reports, got " + std::to_string(reports.size()));
    std::vector<Signature> got;
    for (const MonotoneFiberReport& r : reports) got.push_back(signature_of(r.topology));
    std::sort(got.begin(), got.end());
    std::vector<Signature> want = {{1, {3, 5}}, {3, {3, 3}}, {6, {3}}, {6, {3}},
                                   {6, {3}},    {6, {3}},    {9, {}}};
    std::sort(want.begin(), want.end());
    c.expect(got == want, "signature multiset differs");
    c.expect(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
}

void criterion_codim(Checker& c) {
    GCPolytope P = shape_polytope({2, 5, 7, 8}, 10);
    std::vector<Rational> want = {Rational(8),  Rational(8),  Rational(3),  Rational(3),
                                  Rational(3),  Rational(-2), Rational(-2), Rational(-5),
                                  Rational(-8), Rational(-8)};
    c.expect(P.lambda.values == want, "spectrum of (2,5,7,8;10) is not the expected one");
    int codim = codim_max_component(P, 4, 3);  // re-checks 2(dim D - dim F) internally
    c.expect(codim == 28, "codim: expected 28, got " + std::to_string(codim));
}

void criterion_fl3(Checker& c) {
    auto t0 = std::chrono::steady_clock::now();
    GCPolytope P = shape_polytope({1, 2}, 3);

    auto term = [&](const Term& t) {
        if (t.var < 0) return to_fraction(t.constant);
        auto [i, j] = P.variables[static_cast<std::size_t>(t.var)];
        return "u" + std::to_string(i) + std::to_string(j);
    };
    std::vector<std::string> lines;
    for (const Inequality& q : P.inequalities) lines.push_back(term(q.lo) + "<=" + term(q.hi));
    std::vector<std::string> want = {"u11<=u12", "u12<=2/1", "u21<=u11",
                                     "u21<=0/1", "0/1<=u12", "-2/1<=u21"};
    c.expect(lines == want, "inequality system differs from the reference list");

    GCPoint u0 = center_of_polytope(P);
    auto at = [&](const GCPoint& u, int i, int j) {
        return u.coords[static_cast<std::size_t>(P.var_index(i, j))];
    };
    c.expect(at(u0, 1, 1) == Rational(0) && at(u0, 1, 2) == Rational(1) &&
                 at(u0, 2, 1) == Rational(-1),
             "center is not (0,1,-1)");

    std::vector<LadderFace> faces = enumerate_faces(P.diagram);
    std::map<int, int> hist;
    for (const LadderFace& f : faces) ++hist[f.dimension];
    c.expect(hist == std::map<int, int>{{0, 7}, {1, 11}, {2, 6}, {3, 1}},
             "face dimension counts differ from 7/11/6/1");
    for (const LadderFace& f : faces) {
        int bf = affine_dim_bruteforce(P, face_equalities(P, f));
        c.expect(bf == f.dimension,
                 "face " + f.id + ": ladder dim " + std::to_string(f.dimension) +
                     " vs brute-force " + std::to_string(bf));
    }

    std::vector<MonotoneFiberReport> reports = classify_monotone(P);
    c.expect(reports.size() == 2, "expected 2 monotone fibers");
    if (reports.size() == 2) {
        c.expect(reports[0].topology.label == "T^3" && reports[0].dim == 3,
                 "first report is not the T^3 fiber");
        c.expect(at(reports[0].center, 1, 1) == Rational(0) &&
                     at(reports[0].center, 1, 2) == Rational(1) &&
                     at(reports[0].center, 2, 1) == Rational(-1),
                 "T^3 fiber is not at (0,1,-1)");
        c.expect(reports[1].topology.label == "S^3" && reports[1].dim == 0,
                 "second report is not the S^3 fiber");
        for (const Rational& x : reports[1].center.coords)
            c.expect(x == Rational(0), "S^3 fiber is not at the origin");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 1.0, "runtime " + std::to_string(secs) + "s exceeds 1s");
}

void criterion_fl5_golden(Checker& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out, err;
    int code = gcl::run({"monotone", "--shape", "1,2,3,4:5", "--format", "json"}, out, err);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(code == 0, "classification exited with code " + std::to_string(code));
    if (code != 0) return;

    std::ifstream golden(std::string(GCL_GOLDEN_DIR) + "/fl5_monotone.json");
    c.expect(static_cast<bool>(golden), "golden file fl5_monotone.json is missing");
    if (!golden) return;
    nlohmann::json want = nlohmann::json::parse(golden);
    nlohmann::json got = nlohmann::json::parse(out.str());
    c.expect(got == want, "classification differs from the reviewed golden file");
    c.expect(secs < 600.0, "runtime " + std::to_string(secs) + "s exceeds 600s");
}

void criterion_maslov(Checker& c) {
    c.expect(maslov_from_weights({1, -1}) == 0, "weights (1,-1): expected 0");
    c.expect(maslov_from_weights({-2, -1}) == 6, "weights (-2,-1): expected 6");
}

// Union of the variables of f into equality classes; returns a class id per
// variable, -1 for classes pinned to a constant.
std::vector<int> free_classes(const GCPolytope& P, const LadderFace& f, int* n_classes) {
    EqualitySystem E = face_equalities(P, f);
    std::vector<std::optional<Rational>> forced = forced_values(P, E);
    int D = P.dim();
    std::vector<int> parent(static_cast<std::size_t>(D));
    for (int v = 0; v < D; ++v) parent[static_cast<std::size_t>(v)] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (const EqRelation& r : E.relations) {
        if (r.rhs_is_constant) continue;
        int a = P.var_index(r.lhs.first, r.lhs.second);
        int b = P.var_index(r.rhs_index.first, r.rhs_index.second);
        parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    std::map<int, int> ids;
    std::vector<int> cls(static_cast<std::size_t>(D), -1);
    for (int v = 0; v < D; ++v) {
        if (forced[static_cast<std::size_t>(v)]) continue;  // pinned class
        int root = find(v);
        auto it = ids.emplace(root, static_cast<int>(ids.size())).first;
        cls[static_cast<std::size_t>(v)] = it->second;
    }
    *n_classes = static_cast<int>(ids.size());
    return cls;
}

void criterion_center_characterization(Checker& c) {
    const std::vector<std::pair<std::vector<int>, int>> shapes = {
        {{1, 2}, 3}, {{1, 2, 3, 4}, 5}, {{3}, 6}, {{2}, 4}, {{2}, 5}};
    std::mt19937_64 rng(20250817);
    std::uniform_int_distribution<int> delta(-25, 25);  // delta/100, so |delta| <= 1/4

    for (const auto& [steps, n] : shapes) {
        const ShapeCase* sc = nullptr;
        for (const ShapeCase& cand : test_shapes())
            if (cand.steps == steps && cand.n == n) sc = &cand;
        const GCPolytope& P = sc->P;
        GCPoint u0 = center_of_polytope(P);
        std::string tag = shape_name(steps, n);

        for (const LadderFace& f : sc->faces) {
            if (!is_lagrangian(P.diagram, f)) continue;
            GCPoint uc = face_center(P, f);
            std::vector<std::pair<int, int>> gens = generator_indices(P, f);
            for (const auto& [a, b] : gens)
                c.expect(partial_trace(P, uc, a, b) == partial_trace(P, u0, a, b),
                         tag + " face " + f.id + ": partial trace mismatch at (" +
                             std::to_string(a) + "," + std::to_string(b) + ")");
            if (f.dimension == 0) continue;  // no interior direction to perturb

            int n_classes = 0;
            std::vector<int> cls = free_classes(P, f, &n_classes);
            c.expect(n_classes == f.dimension, tag + " face " + f.id +
                                                   ": free equality classes != dimension");
            for (int round = 0; round < 100; ++round) {
                std::vector<int> d(static_cast<std::size_t>(n_classes));
                bool all_zero = true;
                for (int& x : d) {
                    x = delta(rng);
                    all_zero = all_zero && x == 0;
                }
                if (all_zero) d[0] = 1;
                GCPoint u = uc;
                for (int v = 0; v < P.dim(); ++v)
                    if (cls[static_cast<std::size_t>(v)] >= 0)
                        u.coords[static_cast<std::size_t>(v)] +=
                            Rational(d[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])],
                                     100);
                LadderFace carrier = carrier_face(P, u);
                c.expect(carrier.id == f.id,
                         tag + " face " + f.id + ": perturbation left the relative interior");
                bool violated = false;
                for (const auto& [a, b] : gens)
                    violated =
                        violated || partial_trace(P, u, a, b) != partial_trace(P, u0, a, b);
                c.expect(violated, tag + " face " + f.id +
                                       ": perturbation kept every partial-trace equality");
                if (!c.fails.empty() && c.fails.size() > 8) return;  // enough detail
            }
        }
    }
}

void criterion_dimension_bijection(Checker& c) {
    for (const ShapeCase& sc : test_shapes()) {
        if (sc.P.dim() > 7) continue;  // brute-force oracle works up to dim 7
        std::string tag = shape_name(sc.steps, sc.n);
        for (const LadderFace& f : sc.faces) {
            int bf = affine_dim_bruteforce(sc.P, face_equalities(sc.P, f));
            c.expect(bf == f.dimension, tag + " face " + f.id + ": ladder dim " +
                                            std::to_string(f.dimension) + " vs brute-force " +
                                            std::to_string(bf));
        }
    }
}

void criterion_filling(Checker& c) {
    for (const ShapeCase& sc : test_shapes()) {
        std::string tag = shape_name(sc.steps, sc.n);
        for (const LadderFace& f : sc.faces) {
            LBlockFilling fill = fill_l_blocks(sc.P.diagram, f);
            int sum = 0;
            for (const LBlock& b : fill.blocks) sum += 2 * b.k - 1;
            bool rhs = !fill.overlapping && sum == sc.P.dim();
            c.expect(is_lagrangian(fill) == rhs,
                     tag + " face " + f.id + ": fillable does not match the block criterion");
            if (is_lagrangian(fill)) {
                FiberTopology topo = fiber_topology(sc.P.diagram, f);
                c.expect(topo.torus_rank == f.dimension,
                         tag + " face " + f.id + ": torus rank != face dimension");
            }
        }
    }
}

void criterion_comb_vertices(Checker& c) {
    for (const ShapeCase& sc : test_shapes()) {
        std::string tag = shape_name(sc.steps, sc.n);
        for (int i = 1; i < sc.n; ++i)
            for (int j = 1; j < sc.n; ++j) {
                if (sc.P.var_index(i, j) < 0) continue;
                CombIncidentData data = comb_incident_data(sc.P, i, j);
                std::string at = tag + " comb (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")";
                c.expect(data.comb.dimension == 0, at + ": not a vertex");
                c.expect(fill_l_blocks(sc.P.diagram, data.comb).blocks.empty(),
                         at + ": fiber is not a point");
                c.expect(static_cast<int>(data.edges.size()) == sc.P.dim(),
                         at + ": incident edge count != polytope dimension");
                for (const CombBlockEdge& e : data.edges)
                    c.expect(e.pairing == 0 || e.pairing == -1, at + ": pairing outside {0,-1}");
            }
    }
}

void criterion_oracle(Checker& c) {
    const std::vector<std::vector<double>> spectra = {
        {2, 0, -2}, {3, 3, 3, -3, -3, -3}, {4, 2, 0, -2, -4}};
    for (const std::vector<double>& lam : spectra) {
        std::vector<Rational> vals;
        for (double x : lam) vals.push_back(Rational(static_cast<long>(x)));
        Spectrum s = make_spectrum(vals);
        auto t0 = std::chrono::steady_clock::now();
        OracleReport r = verify(s, 10000, kOracleSeed, kOracleTol);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string tag = "spectrum of " + std::to_string(lam.size()) + " values";
        c.expect(r.samples == 10000, tag + ": sample count");
        c.expect(r.failures == 0, tag + ": " + std::to_string(r.failures) + " failures");
        c.expect(r.max_interlacing_violation <= kOracleTol, tag + ": interlacing violation");
        c.expect(r.max_trace_violation <= kOracleTol, tag + ": trace violation");
        c.expect(secs < 60.0, tag + ": runtime " + std::to_string(secs) + "s exceeds 60s");
    }
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<void(Checker&)> body;
    };
    const std::vector<Entry> entries = {
        {"Gr(3,6) monotone classification", criterion_gr36},
        {"codimension of the (4,3) maximum locus", criterion_codim},
        {"Fl(3) reference suite", criterion_fl3},
        {"Fl(5) golden classification", criterion_fl5_golden},
        {"Maslov index from fixed-point weights", criterion_maslov},
        {"centers characterized by partial traces", criterion_center_characterization},
        {"ladder dimension equals affine dimension", criterion_dimension_bijection},
        {"L-block filling criterion", criterion_filling},
        {"comb vertices are point fibers", criterion_comb_vertices},
        {"spectral oracle on three orbits", criterion_oracle},
    };

    int failed = 0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        Checker c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            entries[k].body(c);
        } catch (const std::exception& e) {
            c.fails.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu %s %7.2fs  %s\n", k + 1, c.fails.empty() ? "PASS" : "FAIL",
                    secs, entries[k].name);
        if (!c.fails.empty()) {
            ++failed;
            std::size_t shown = 0;
            for (const std::string& f : c.fails) {
                std::printf("    - %s\n", f.c_str());
                if (++shown == 8) {
                    std::printf("    - (%zu more)\n", c.fails.size() - shown);
                    break;
                }
            }
        }
        std::fflush(stdout);
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", entries.size() - failed, entries.size());
    return failed == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gcl/error.hpp"
#include "gcl/polytope.hpp"

using namespace gcl;

namespace {

GCPolytope shape_polytope(std::vector<int> steps, int n) {
    return build_polytope(monotone_spectrum(make_shape(std::move(steps), n)));
}

// (u11, u12, u21) in the human order of the worked 3x3 examples.
GCPoint fl3_point(const GCPolytope& P, const Rational& u11, const Rational& u12,
                  const Rational& u21) {
    GCPoint u;
    u.coords.resize(3);
    u.coords[static_cast<std::size_t>(P.var_index(1, 1))] = u11;
    u.coords[static_cast<std::size_t>(P.var_index(1, 2))] = u12;
    u.coords[static_cast<std::size_t>(P.var_index(2, 1))] = u21;
    return u;
}

LadderFace face_without(const GCPolytope& P, const std::vector<Edge>& removed) {
    EdgeSet s = P.diagram.full_edge_set();
    for (const Edge& e : removed) s.reset(P.diagram.edge_index(e));
    return make_face(P.diagram, prune_to_positive_paths(P.diagram, s));
}

}  // namespace

TEST_CASE("monotone spectra") {
    auto values = [](const Spectrum& s) {
        std::vector<long long> v;
        for (const Rational& r : s.values) v.push_back(to_int64(r));
        return v;
    };
    CHECK(values(monotone_spectrum(make_shape({1, 2}, 3))) == std::vector<long long>{2, 0, -2});
    CHECK(values(monotone_spectrum(make_shape({3}, 6))) ==
          std::vector<long long>{3, 3, 3, -3, -3, -3});
    CHECK(values(monotone_spectrum(make_shape({2, 3}, 5))) ==
          std::vector<long long>{3, 3, 0, -3, -3});
    CHECK(values(monotone_spectrum(make_shape({2, 3, 4, 5, 6}, 7))) ==
          std::vector<long long>{5, 5, 2, 0, -2, -4, -6});
    CHECK(values(monotone_spectrum(make_shape({2, 5, 7, 8}, 10))) ==
          std::vector<long long>{8, 8, 3, 3, 3, -2, -2, -5, -8, -8});

    CHECK(is_monotone_normalized(monotone_spectrum(make_shape({1, 2, 3, 4}, 5))));
    CHECK(!is_monotone_normalized(make_spectrum({Rational(1), Rational(0)})));
    CHECK(!is_monotone_normalized(make_spectrum({Rational(2), Rational(1), Rational(-1)})));
}

TEST_CASE("Fl(3) inequality system") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    CHECK(P.n() == 3);
    CHECK(P.dim() == 3);
    CHECK(P.variables == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {1, 1}});
    REQUIRE(P.inequalities.size() == 6);

    auto line = [&](const Inequality& q) {
        auto side = [&](const Term& t) {
            if (t.var < 0) return to_fraction(t.constant);
            auto [i, j] = P.variables[static_cast<std::size_t>(t.var)];
            return "u" + std::to_string(i) + std::to_string(j);
        };
        return side(q.lo) + "<=" + side(q.hi);
    };
    std::vector<std::string> lines;
    for (const Inequality& q : P.inequalities) lines.push_back(line(q));
    CHECK(lines == std::vector<std::string>{"u11<=u12", "u12<=2/1", "u21<=u11", "u21<=0/1",
                                            "0/1<=u12", "-2/1<=u21"});

    // Every non-axis edge owns exactly one inequality.
    int mapped = 0;
    for (int e = 0; e < P.diagram.edge_count(); ++e)
        if (P.edge_inequality[static_cast<std::size_t>(e)] >= 0) ++mapped;
    CHECK(mapped == 6);
}

TEST_CASE("degenerate spectrum turns pattern entries into constants") {
    GCPolytope P = build_polytope(make_spectrum(
        {Rational(3), Rational(3), Rational(3), Rational(-3), Rational(-3), Rational(-3)}));
    CHECK(P.dim() == 9);
    for (auto [i, j] : P.diagram.board_boxes()) {
        CHECK(i <= 3);
        CHECK(j <= 3);
    }
    CHECK(P.is_constant(1, 4));
    CHECK(P.is_constant(2, 4));
    CHECK(P.is_constant(1, 5));
    CHECK(P.is_constant(2, 5));
    CHECK(P.constant_value(1, 4) == Rational(3));
    CHECK(P.constant_value(2, 5) == Rational(3));
}

TEST_CASE("single-box polytope") {
    GCPolytope P = build_polytope(make_spectrum({Rational(1), Rational(0)}));
    CHECK(P.dim() == 1);
    CHECK(P.variables == std::vector<std::pair<int, int>>{{1, 1}});
    GCPoint u;
    u.coords = {Rational(1, 2)};
    CHECK(contains(P, u, true));
    u.coords = {Rational(1)};
    CHECK(contains(P, u, false));
    CHECK(!contains(P, u, true));
    u.coords = {Rational(3, 2)};
    CHECK(!contains(P, u, false));
}

TEST_CASE("containment and the center") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    GCPoint center = center_of_polytope(P);
    CHECK(center.coords[static_cast<std::size_t>(P.var_index(1, 1))] == Rational(0));
    CHECK(center.coords[static_cast<std::size_t>(P.var_index(1, 2))] == Rational(1));
    CHECK(center.coords[static_cast<std::size_t>(P.var_index(2, 1))] == Rational(-1));
    CHECK(contains(P, center, true));
    CHECK(serialize_point(P, center) == "1,2=1/1;2,1=-1/1;1,1=0/1");

    CHECK(!contains(P, fl3_point(P, Rational(3), Rational(0), Rational(0)), false));
    // Rational approximants of (0, sqrt(2), -sqrt(2)).
    Rational root2(14142135623730951LL, 10000000000000000LL);
    CHECK(contains(P, fl3_point(P, Rational(0), root2, -root2), true));

    for (auto& [steps, n] : std::vector<std::pair<std::vector<int>, int>>{
             {{1, 2}, 3}, {{3}, 6}, {{2, 3}, 5}, {{2, 5, 7, 8}, 10}}) {
        GCPolytope Q = shape_polytope(steps, n);
        GCPoint c = center_of_polytope(Q);
        CHECK(contains(Q, c, true));
        for (const Rational& v : c.coords) CHECK(is_integral(v));
    }

    CHECK_THROWS_AS(center_of_polytope(build_polytope(make_spectrum({Rational(1), Rational(0)}))),
                    InputError);
}

TEST_CASE("spectral and geometric in-board rules agree") {
    for (auto& [steps, n] : std::vector<std::pair<std::vector<int>, int>>{
             {{1, 2}, 3}, {{3}, 6}, {{2, 3}, 5}, {{1, 2, 3, 4}, 5}, {{2, 5, 7, 8}, 10}}) {
        GCPolytope P = shape_polytope(steps, n);
        const auto& lam = P.lambda.values;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; i + j <= n + 1; ++j) {
                bool spectral = lam[static_cast<std::size_t>(i - 1)] >
                                lam[static_cast<std::size_t>(n - j)];
                CHECK(P.diagram.in_board(i, j) == spectral);
                CHECK((P.var_index(i, j) >= 0) == spectral);
                if (!spectral) {
                    CHECK(P.is_constant(i, j));
                    CHECK(P.constant_value(i, j) == lam[static_cast<std::size_t>(i - 1)]);
                }
            }
    }
}

TEST_CASE("face equalities of the worked Fl(3) faces") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    LadderFace g1 = face_without(P, {vedge(1, 1)});
    CHECK(g1.dimension == 2);
    CHECK(serialize_equalities(face_equalities(P, g1)) == "1,2=0/1");

    LadderFace g2 = face_without(P, {vedge(1, 1), vedge(1, 0)});
    CHECK(g2.dimension == 1);
    CHECK(serialize_equalities(face_equalities(P, g2)) == "1,1=2,1;1,2=0/1");

    CHECK(face_contains(g1, g2));
    CHECK(!face_contains(g2, g1));

    CHECK(face_equalities(P, make_face(P.diagram, P.diagram.full_edge_set())).relations.empty());
}

TEST_CASE("vertex enumeration and affine dimensions") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    EqualitySystem empty;
    std::vector<GCPoint> vs = enumerate_vertices(P, empty);
    CHECK(vs.size() == 7);
    CHECK(affine_dim_bruteforce(P, empty) == 3);

    LadderFace g1 = face_without(P, {vedge(1, 1)});
    CHECK(affine_dim_bruteforce(P, face_equalities(P, g1)) == 2);

    LadderFace v1 = carrier_face(P, fl3_point(P, Rational(0), Rational(0), Rational(0)));
    CHECK(v1.dimension == 0);
    std::vector<GCPoint> pt = enumerate_vertices(P, face_equalities(P, v1));
    REQUIRE(pt.size() == 1);
    for (const Rational& c : pt[0].coords) CHECK(c == Rational(0));

    // Ladder dimension equals the brute-force affine dimension on every face.
    for (const LadderFace& f : enumerate_faces(P.diagram))
        CHECK(affine_dim_bruteforce(P, face_equalities(P, f)) == f.dimension);

    CHECK_THROWS_AS(enumerate_vertices(shape_polytope({3}, 6), empty), LimitError);
}

TEST_CASE("face order mirrors solution-set order on Fl(3)") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    std::vector<LadderFace> faces = enumerate_faces(P.diagram);
    std::vector<std::vector<GCPoint>> verts;
    for (const LadderFace& f : faces) verts.push_back(enumerate_vertices(P, face_equalities(P, f)));

    auto satisfies = [&](const GCPoint& u, const EqualitySystem& E) {
        for (const EqRelation& rel : E.relations) {
            Rational lhs = P.value_at(u, rel.lhs.first, rel.lhs.second);
            Rational rhs = rel.rhs_is_constant
                               ? rel.rhs_value
                               : P.value_at(u, rel.rhs_index.first, rel.rhs_index.second);
            if (lhs != rhs) return false;
        }
        return true;
    };

    for (std::size_t j = 0; j < faces.size(); ++j) {
        EqualitySystem Ej = face_equalities(P, faces[j]);
        for (std::size_t i = 0; i < faces.size(); ++i) {
            bool sub = face_contains(faces[j], faces[i]);
            bool sol_sub = std::all_of(verts[i].begin(), verts[i].end(),
                                       [&](const GCPoint& u) { return satisfies(u, Ej); });
            CHECK(sub == sol_sub);
        }
    }
}

TEST_CASE("carrier faces") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    CHECK(carrier_face(P, center_of_polytope(P)).edges == P.diagram.full_edge_set());

    LadderFace v1 = carrier_face(P, fl3_point(P, Rational(0), Rational(0), Rational(0)));
    CHECK(v1.id == "H:0,0;V:0,0;V:0,1;H:0,2;H:1,0;V:2,0");

    LadderFace edge = carrier_face(P, fl3_point(P, Rational(1), Rational(2), Rational(0)));
    CHECK(edge.dimension == 1);
    CHECK(edge.id == "H:0,0;V:0,0;H:0,1;H:1,0;V:1,0;V:1,1;V:2,0");
    // Idempotent under perturbation inside the relative interior.
    CHECK(carrier_face(P, fl3_point(P, Rational(3, 2), Rational(2), Rational(0))).id == edge.id);

    CHECK_THROWS_AS(carrier_face(P, fl3_point(P, Rational(3), Rational(0), Rational(0))),
                    InputError);
}

TEST_CASE("forced values propagate constants through equalities") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    LadderFace v1 = carrier_face(P, fl3_point(P, Rational(0), Rational(0), Rational(0)));
    auto pins = forced_values(P, face_equalities(P, v1));
    for (auto [i, j] : P.variables) {
        REQUIRE(pins[static_cast<std::size_t>(P.var_index(i, j))].has_value());
        CHECK(*pins[static_cast<std::size_t>(P.var_index(i, j))] == Rational(0));
    }

    LadderFace edge = carrier_face(P, fl3_point(P, Rational(1), Rational(2), Rational(0)));
    auto pins2 = forced_values(P, face_equalities(P, edge));
    CHECK(*pins2[static_cast<std::size_t>(P.var_index(1, 2))] == Rational(2));
    CHECK(*pins2[static_cast<std::size_t>(P.var_index(2, 1))] == Rational(0));
    CHECK(!pins2[static_cast<std::size_t>(P.var_index(1, 1))].has_value());

    CHECK(!forced_values(P, EqualitySystem{})[0].has_value());
}

TEST_CASE("point serialization round trip") {
    GCPolytope P = shape_polytope({1, 2}, 3);
    GCPoint u = fl3_point(P, Rational(1, 3), Rational(3, 2), Rational(-1, 2));
    std::string text = serialize_point(P, u);
    CHECK(text == "1,2=3/2;2,1=-1/2;1,1=1/3");
    GCPoint back = parse_point(P, text);
    CHECK(back.coords == u.coords);

    CHECK_THROWS_AS(parse_point(P, "1,2=1/1"), InputError);
    CHECK_THROWS_AS(parse_point(P, "1,2=1/1;2,1=0/1;1,1=0/1;1,2=2/1"), InputError);
    CHECK_THROWS_AS(parse_point(P, "9,9=1/1;2,1=0/1;1,1=0/1"), InputError);
    CHECK_THROWS_AS(parse_point(P, "1,2=x;2,1=0/1;1,1=0/1"), InputError);
}

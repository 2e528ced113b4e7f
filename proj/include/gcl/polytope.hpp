#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcl/diagram.hpp"
#include "gcl/rational.hpp"
#include "gcl/shape.hpp"

namespace gcl {

// One side of an interlacing inequality: an in-board variable or a constant.
struct Term {
    int var = -1;       // index into GCPolytope::variables, -1 for a constant
    Rational constant;  // meaningful only when var < 0
};

// hi >= lo, carried by the diagram edge whose removal makes it an equality.
struct Inequality {
    int edge = -1;
    Term hi, lo;
};

struct GCPoint {
    std::vector<Rational> coords;  // aligned with GCPolytope::variables
};

struct GCPolytope {
    Spectrum lambda;
    LadderDiagram diagram;
    // In-board (i,j), sorted by (i+j descending, i ascending); the order fixes
    // GCPoint serialization.
    std::vector<std::pair<int, int>> variables;
    std::vector<Inequality> inequalities;  // one per non-axis edge, edge order
    std::vector<int> edge_inequality;      // per edge: index into inequalities, -1 for axis edges

    int n() const { return lambda.n(); }
    int dim() const { return static_cast<int>(variables.size()); }

    int var_index(int i, int j) const;            // -1 when (i,j) is not in-board
    bool is_constant(int i, int j) const;         // out-of-board with 2 <= i+j <= n+1
    Rational constant_value(int i, int j) const;  // lambda_i

    // Pattern entry at u: variable coordinate or pinned constant.
    Rational value_at(const GCPoint& u, int i, int j) const;
    Rational eval(const Term& t, const GCPoint& u) const;
};

GCPolytope build_polytope(const Spectrum& lambda);

bool contains(const GCPolytope& P, const GCPoint& u, bool strict);

// Integer spectrum normalized so the orbit is monotone with minimal value
// level 0; block j takes the value n - n_{j-1} - n_j.
Spectrum monotone_spectrum(const FlagShape& shape);

bool is_monotone_normalized(const Spectrum& lambda);

// u_{i,j} = j - i; strictly interior.  InputError unless monotone-normalized.
GCPoint center_of_polytope(const GCPolytope& P);

// lhs is always an in-board index; rhs is in-board or a recorded constant.
struct EqRelation {
    std::pair<int, int> lhs;
    bool rhs_is_constant = false;
    std::pair<int, int> rhs_index{-1, -1};
    Rational rhs_value;
};

struct EqualitySystem {
    std::vector<EqRelation> relations;
};

// Equalities generated by the edges absent from f: absent H(x,y) gives
// u_{x+1,y} = u_{x+1,y+1}, absent V(x,y) gives u_{x,y+1} = u_{x+1,y+1};
// axis edges (lhs with i = 0 or j = 0) generate nothing.
EqualitySystem face_equalities(const GCPolytope& P, const LadderFace& f);

// All vertices of {u in Delta : E}, exact and deduplicated.  Engine of the
// brute-force dimension oracle.  LimitError when dim > 7.
std::vector<GCPoint> enumerate_vertices(const GCPolytope& P, const EqualitySystem& E);

// Affine dimension of the vertex hull, -1 for empty.  LimitError when dim > 7.
int affine_dim_bruteforce(const GCPolytope& P, const EqualitySystem& E);

// Constant propagation through E: per-variable forced value, nullopt while a
// degree of freedom remains.  InputError when E is self-contradictory.
std::vector<std::optional<Rational>> forced_values(const GCPolytope& P, const EqualitySystem& E);

// The face whose relative interior contains u: drop every edge whose
// inequality is tight, prune to the positive-path closure, post-verify that
// tight inequalities are exactly the absent edges.
LadderFace carrier_face(const GCPolytope& P, const GCPoint& u);

// "i,j=p/q" tokens in variable order, semicolon-joined.
std::string serialize_point(const GCPolytope& P, const GCPoint& u);
GCPoint parse_point(const GCPolytope& P, const std::string& text);

// Sorted "lhs=rhs" tokens, semicolon-joined.
std::string serialize_equalities(const EqualitySystem& E);

}  // namespace gcl

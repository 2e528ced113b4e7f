#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gcl/diagram.hpp"
#include "gcl/filling.hpp"
#include "gcl/polytope.hpp"
#include "gcl/rational.hpp"

namespace gcl {

// One disc class attached to a bounded-region generator (a,b) of a face.
struct DiscGenerator {
    int a = 0;
    int b = 0;
    Rational c;           // lambda_1 + ... + lambda_a, the partial-trace maximum
    Rational psi_center;  // partial trace at the polytope center
    Rational psi_point;   // partial trace at the evaluation point
    Rational maslov;      // 2(c - psi_center)
    Rational area;        // c - psi_point
    bool monotone = false;  // maslov == 2 * area
};

struct MonotoneFiberReport {
    std::string face_id;
    int dim = 0;
    GCPoint center;
    FiberTopology topology;
    std::vector<DiscGenerator> generators;
};

// Top-right boxes of the bounded regions of f, sorted (a+b descending, a
// ascending).  Their count always equals the face dimension.
std::vector<std::pair<int, int>> generator_indices(const GCPolytope& P, const LadderFace& f);

// Canonical relative-interior point: each bounded region takes b-a of its
// generator, each unbounded region its pinned constant.  InputError when a
// region is pinned inconsistently or the point fails to land inside f.
GCPoint face_center(const GCPolytope& P, const LadderFace& f);

// Sum of the pattern entries (i, a+b-i) for i = 1..a, constants substituted.
// Pre: a, b >= 1 and a+b <= n.
Rational partial_trace(const GCPolytope& P, const GCPoint& u, int a, int b);

// Real codimension of the locus where the partial trace attains its maximum:
// 2(c - psi(center)).  Cross-checked against the dimension drop of the face
// cut out by pinning the anti-diagonal, which must agree exactly.
int codim_max_component(const GCPolytope& P, int a, int b);

// Maslov/area ledger of the disc generators of f, evaluated at u (which must
// lie in the relative interior of f).
std::vector<DiscGenerator> disc_ledger(const GCPolytope& P, const LadderFace& f, const GCPoint& u);

// Lagrangian and every generator satisfies maslov == 2 * area at the center.
bool is_monotone_fiber(const GCPolytope& P, const LadderFace& f);

// Reports for every face carrying a monotone Lagrangian fiber, sorted
// (dim descending, id).  Requires the monotone-normalized spectrum.
std::vector<MonotoneFiberReport> classify_monotone(const GCPolytope& P,
                                                   const EnumerationGuard& guard = {});

// Index of a disc from the circle weights at its center: -2 * sum(weights).
long long maslov_from_weights(const std::vector<long long>& weights);

// One edge of the polytope leaving a comb vertex: an arm-pair block inside a
// cut rectangle.  Type A anchors at the bottom-right box (arms left/up), type
// B at the top-left box (arms right/down).
struct CombBlockEdge {
    bool type_a = true;
    int p = 1;  // arm length along the row
    int q = 1;  // arm length along the column
    std::pair<int, int> corner{0, 0};  // anchor box
    std::vector<std::pair<int, int>> boxes;
    LadderFace face;  // the comb plus the block boundary; always dimension 1
    int pairing = 0;  // against the partial-trace direction; 0 or -1
};

struct CombRegion {
    int i0 = 0, i1 = 0, j0 = 0, j1 = 0;  // box ranges of the cut rectangle
    bool type_a = true;
};

struct CombIncidentData {
    LadderFace comb;
    GCPoint vertex;
    std::vector<CombRegion> regions;      // sorted by (i0, j0)
    std::vector<CombBlockEdge> edges;     // region order, then (p, q)
};

// The comb vertex for (a,b) with its complete incident-edge decomposition.
// Every structural property is re-verified; violations are InternalErrors.
CombIncidentData comb_incident_data(const GCPolytope& P, int a, int b);

nlohmann::ordered_json report_to_json(const GCPolytope& P, const MonotoneFiberReport& r);

}  // namespace gcl

#include "gcl/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "gcl/error.hpp"

namespace gcl {

namespace {

// Union-find over variable indices with an optional pinned value per class.
struct PinnedUF {
    std::vector<int> parent;
    std::vector<std::optional<Rational>> pin;

    explicit PinnedUF(int m) : parent(static_cast<std::size_t>(m)), pin(static_cast<std::size_t>(m)) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }

    // False on a pin conflict; the system is then infeasible.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return true;
        auto& pa = pin[static_cast<std::size_t>(a)];
        auto& pb = pin[static_cast<std::size_t>(b)];
        if (pa && pb && *pa != *pb) return false;
        parent[static_cast<std::size_t>(b)] = a;
        if (!pa && pb) pa = pb;
        pb.reset();
        return true;
    }

    bool set_pin(int v, const Rational& val) {
        v = find(v);
        auto& p = pin[static_cast<std::size_t>(v)];
        if (p) return *p == val;
        p = val;
        return true;
    }
};

// A term resolved through a PinnedUF: class representative or known constant.
struct Side {
    int var = -1;  // -1: constant
    Rational c;
};

Side resolve(PinnedUF& uf, const Term& t) {
    if (t.var < 0) return Side{-1, t.constant};
    int r = uf.find(t.var);
    const auto& p = uf.pin[static_cast<std::size_t>(r)];
    if (p) return Side{-1, *p};
    return Side{r, Rational(0)};
}

int parse_small_int(const std::string& s) {
    if (s.empty()) throw InputError("point: empty index");
    std::size_t pos = 0;
    int v = 0;
    bool neg = false;
    if (s[0] == '-') {
        neg = true;
        pos = 1;
        if (s.size() == 1) throw InputError("point: malformed index '" + s + "'");
    }
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c < '0' || c > '9') throw InputError("point: malformed index '" + s + "'");
        if (v > 100000) throw InputError("point: index out of range '" + s + "'");
        v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

}  // namespace

int GCPolytope::var_index(int i, int j) const {
    for (std::size_t k = 0; k < variables.size(); ++k)
        if (variables[k].first == i && variables[k].second == j) return static_cast<int>(k);
    return -1;
}

bool GCPolytope::is_constant(int i, int j) const {
    if (i < 1 || j < 1 || i + j > n() + 1) return false;
    return !diagram.in_board(i, j);
}

Rational GCPolytope::constant_value(int i, int j) const {
    if (!is_constant(i, j)) throw UsageError("constant_value: cell is not a pinned constant");
    return lambda.values[static_cast<std::size_t>(i - 1)];
}

Rational GCPolytope::value_at(const GCPoint& u, int i, int j) const {
    if (u.coords.size() != variables.size()) throw UsageError("value_at: coordinate count mismatch");
    if (i < 1 || j < 1 || i + j > n() + 1) throw InputError("value_at: pattern index out of range");
    int v = var_index(i, j);
    if (v >= 0) return u.coords[static_cast<std::size_t>(v)];
    return constant_value(i, j);
}

Rational GCPolytope::eval(const Term& t, const GCPoint& u) const {
    if (t.var < 0) return t.constant;
    if (u.coords.size() != variables.size()) throw UsageError("eval: coordinate count mismatch");
    return u.coords[static_cast<std::size_t>(t.var)];
}

GCPolytope build_polytope(const Spectrum& lambda) {
    GCPolytope P;
    P.lambda = lambda;
    P.diagram = build_ladder(lambda.shape);
    const int n = lambda.n();

    for (int s = 2; s <= n + 1; ++s)
        for (int i = 1; i < s; ++i) {
            int j = s - i;
            if (P.diagram.in_board(i, j)) P.variables.emplace_back(i, j);
        }
    std::sort(P.variables.begin(), P.variables.end(), [](const auto& a, const auto& b) {
        if (a.first + a.second != b.first + b.second) return a.first + a.second > b.first + b.second;
        return a.first < b.first;
    });

    // Out-of-board cells inside the triangle must be forced: their in-board
    // failure is exactly lambda_i == lambda_{n+1-j}.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; i + j <= n + 1; ++j)
            if (!P.diagram.in_board(i, j) &&
                lambda.values[static_cast<std::size_t>(i - 1)] !=
                    lambda.values[static_cast<std::size_t>(n - j)])
                throw InternalError("polytope: constant cell disagrees with spectrum");

    auto term_of = [&](int i, int j) -> Term {
        int v = P.var_index(i, j);
        if (v >= 0) return Term{v, Rational(0)};
        if (!P.is_constant(i, j)) throw InternalError("polytope: inequality references invalid cell");
        return Term{-1, P.constant_value(i, j)};
    };

    P.edge_inequality.assign(static_cast<std::size_t>(P.diagram.edge_count()), -1);
    for (int e = 0; e < P.diagram.edge_count(); ++e) {
        const Edge& ed = P.diagram.edges[static_cast<std::size_t>(e)];
        Inequality iq;
        iq.edge = e;
        if (ed.o == Orient::H) {
            if (ed.y == 0) continue;  // axis edge, no inequality
            iq.hi = term_of(ed.x + 1, ed.y + 1);
            iq.lo = term_of(ed.x + 1, ed.y);
            if (iq.lo.var < 0) throw InternalError("polytope: lower cell of a row edge must be in-board");
        } else {
            if (ed.x == 0) continue;
            iq.hi = term_of(ed.x, ed.y + 1);
            iq.lo = term_of(ed.x + 1, ed.y + 1);
            if (iq.hi.var < 0) throw InternalError("polytope: upper cell of a column edge must be in-board");
        }
        P.edge_inequality[static_cast<std::size_t>(e)] = static_cast<int>(P.inequalities.size());
        P.inequalities.push_back(iq);
    }
    return P;
}

bool contains(const GCPolytope& P, const GCPoint& u, bool strict) {
    if (u.coords.size() != P.variables.size()) throw UsageError("contains: coordinate count mismatch");
    for (const Inequality& iq : P.inequalities) {
        Rational hi = P.eval(iq.hi, u);
        Rational lo = P.eval(iq.lo, u);
        if (strict ? !(hi > lo) : !(hi >= lo)) return false;
    }
    return true;
}

Spectrum monotone_spectrum(const FlagShape& shape) {
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(shape.n));
    for (int j = 1; j <= shape.rank() + 1; ++j) {
        Rational v = shape.n - shape.step(j - 1) - shape.step(j);
        for (int k = shape.step(j - 1); k < shape.step(j); ++k) values.push_back(v);
    }
    Spectrum out = make_spectrum(std::move(values));
    if (!(out.shape == shape)) throw InternalError("monotone_spectrum: derived shape mismatch");
    return out;
}

bool is_monotone_normalized(const Spectrum& lambda) {
    return monotone_spectrum(lambda.shape).values == lambda.values;
}

GCPoint center_of_polytope(const GCPolytope& P) {
    if (!is_monotone_normalized(P.lambda))
        throw InputError("center: spectrum is not the monotone normalization of its shape");
    GCPoint u;
    u.coords.reserve(P.variables.size());
    for (const auto& [i, j] : P.variables) u.coords.emplace_back(j - i);
    if (!contains(P, u, true)) throw InternalError("center: computed point is not interior");
    return u;
}

EqualitySystem face_equalities(const GCPolytope& P, const LadderFace& f) {
    if (f.edges.size_bits() != P.diagram.edge_count())
        throw UsageError("face_equalities: face belongs to a different diagram");
    EqualitySystem E;
    for (int e = 0; e < P.diagram.edge_count(); ++e) {
        if (f.edges.test(e)) continue;
        const Edge& ed = P.diagram.edges[static_cast<std::size_t>(e)];
        EqRelation rel;
        int ri, rj;
        if (ed.o == Orient::H) {
            if (ed.y == 0) continue;  // axis edge carries no relation
            rel.lhs = {ed.x + 1, ed.y};
            ri = ed.x + 1;
            rj = ed.y + 1;
        } else {
            if (ed.x == 0) continue;
            rel.lhs = {ed.x, ed.y + 1};
            ri = ed.x + 1;
            rj = ed.y + 1;
        }
        if (P.var_index(rel.lhs.first, rel.lhs.second) < 0)
            throw InternalError("face_equalities: equality lhs must be in-board");
        if (P.var_index(ri, rj) >= 0) {
            rel.rhs_is_constant = false;
            rel.rhs_index = {ri, rj};
        } else {
            rel.rhs_is_constant = true;
            rel.rhs_index = {ri, rj};
            rel.rhs_value = P.constant_value(ri, rj);
        }
        E.relations.push_back(std::move(rel));
    }
    return E;
}

namespace {

// Fold E into a fresh union-find; false means the system is infeasible.
bool apply_relations(const GCPolytope& P, const EqualitySystem& E, PinnedUF& uf) {
    for (const EqRelation& rel : E.relations) {
        int lv = P.var_index(rel.lhs.first, rel.lhs.second);
        Side lhs;
        if (lv >= 0) {
            lhs = Side{lv, Rational(0)};
        } else if (P.is_constant(rel.lhs.first, rel.lhs.second)) {
            lhs = Side{-1, P.constant_value(rel.lhs.first, rel.lhs.second)};
        } else {
            throw InputError("equalities: lhs cell is outside the pattern");
        }
        Side rhs;
        if (rel.rhs_is_constant) {
            rhs = Side{-1, rel.rhs_value};
        } else {
            int rv = P.var_index(rel.rhs_index.first, rel.rhs_index.second);
            if (rv >= 0)
                rhs = Side{rv, Rational(0)};
            else if (P.is_constant(rel.rhs_index.first, rel.rhs_index.second))
                rhs = Side{-1, P.constant_value(rel.rhs_index.first, rel.rhs_index.second)};
            else
                throw InputError("equalities: rhs cell is outside the pattern");
        }
        bool ok;
        if (lhs.var >= 0 && rhs.var >= 0)
            ok = uf.unite(lhs.var, rhs.var);
        else if (lhs.var >= 0)
            ok = uf.set_pin(lhs.var, rhs.c);
        else if (rhs.var >= 0)
            ok = uf.set_pin(rhs.var, lhs.c);
        else
            ok = lhs.c == rhs.c;
        if (!ok) return false;
    }
    return true;
}

}  // namespace

std::vector<GCPoint> enumerate_vertices(const GCPolytope& P, const EqualitySystem& E) {
    const int m = P.dim();
    if (m > 7) throw LimitError("vertex oracle: polytope dimension exceeds the brute-force limit (7)");

    PinnedUF base(m);
    if (!apply_relations(P, E, base)) return {};

    // Inequalities surviving the substitution, deduplicated.
    std::vector<std::pair<Side, Side>> reduced;
    std::set<std::tuple<int, Rational, int, Rational>> seen;
    for (const Inequality& iq : P.inequalities) {
        Side hi = resolve(base, iq.hi);
        Side lo = resolve(base, iq.lo);
        if (hi.var < 0 && lo.var < 0) {
            if (hi.c < lo.c) return {};
            continue;
        }
        if (hi.var >= 0 && hi.var == lo.var) continue;
        if (seen.insert({hi.var, hi.c, lo.var, lo.c}).second) reduced.push_back({hi, lo});
    }
    const std::size_t mprime = reduced.size();
    if (mprime > 26) throw LimitError("vertex oracle: too many independent inequalities");

    // A vertex is cut out by turning some subset into equalities; trying every
    // subset and keeping the fully pinned, feasible outcomes finds them all.
    std::set<std::vector<Rational>> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << mprime); ++mask) {
        PinnedUF uf = base;
        bool ok = true;
        for (std::size_t i = 0; i < mprime && ok; ++i) {
            if (!((mask >> i) & 1)) continue;
            const auto& [hi, lo] = reduced[i];
            if (hi.var >= 0 && lo.var >= 0)
                ok = uf.unite(hi.var, lo.var);
            else if (hi.var >= 0)
                ok = uf.set_pin(hi.var, lo.c);
            else
                ok = uf.set_pin(lo.var, hi.c);
        }
        if (!ok) continue;
        std::vector<Rational> coords(static_cast<std::size_t>(m));
        bool full = true;
        for (int v = 0; v < m && full; ++v) {
            int r = uf.find(v);
            const auto& p = uf.pin[static_cast<std::size_t>(r)];
            if (!p)
                full = false;
            else
                coords[static_cast<std::size_t>(v)] = *p;
        }
        if (!full) continue;
        GCPoint cand{coords};
        if (!contains(P, cand, false)) continue;
        found.insert(std::move(coords));
    }

    std::vector<GCPoint> out;
    out.reserve(found.size());
    for (const auto& c : found) out.push_back(GCPoint{c});
    return out;
}

int affine_dim_bruteforce(const GCPolytope& P, const EqualitySystem& E) {
    std::vector<GCPoint> vs = enumerate_vertices(P, E);
    if (vs.empty()) return -1;
    const std::size_t m = P.variables.size();
    std::vector<std::vector<Rational>> rows;
    rows.reserve(vs.size() - 1);
    for (std::size_t k = 1; k < vs.size(); ++k) {
        std::vector<Rational> row(m);
        for (std::size_t c = 0; c < m; ++c) row[c] = vs[k].coords[c] - vs[0].coords[c];
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (std::size_t col = 0; col < m && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
        const std::vector<Rational>& pr = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Rational f = rows[r][col] / pr[col];
            for (std::size_t c = col; c < m; ++c) rows[r][c] -= f * pr[c];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::optional<Rational>> forced_values(const GCPolytope& P, const EqualitySystem& E) {
    PinnedUF uf(P.dim());
    if (!apply_relations(P, E, uf)) throw InputError("equalities: system is infeasible");
    std::vector<std::optional<Rational>> out(P.variables.size());
    for (int v = 0; v < P.dim(); ++v)
        out[static_cast<std::size_t>(v)] = uf.pin[static_cast<std::size_t>(uf.find(v))];
    return out;
}

LadderFace carrier_face(const GCPolytope& P, const GCPoint& u) {
    if (u.coords.size() != P.variables.size()) throw UsageError("carrier: coordinate count mismatch");
    if (!contains(P, u, false)) throw InputError("carrier: point lies outside the polytope");

    EdgeSet keep = P.diagram.full_edge_set();
    std::vector<bool> tight(static_cast<std::size_t>(P.diagram.edge_count()), false);
    for (int e = 0; e < P.diagram.edge_count(); ++e) {
        int k = P.edge_inequality[static_cast<std::size_t>(e)];
        if (k < 0) continue;
        const Inequality& iq = P.inequalities[static_cast<std::size_t>(k)];
        if (P.eval(iq.hi, u) == P.eval(iq.lo, u)) {
            tight[static_cast<std::size_t>(e)] = true;
            keep.reset(e);
        }
    }
    EdgeSet pruned = prune_to_positive_paths(P.diagram, keep);
    LadderFace f = make_face(P.diagram, pruned);
    for (int e = 0; e < P.diagram.edge_count(); ++e) {
        if (P.edge_inequality[static_cast<std::size_t>(e)] < 0) continue;
        if (tight[static_cast<std::size_t>(e)] == f.edges.test(e))
            throw InternalError("carrier: tight inequalities do not match the absent edges");
    }
    return f;
}

std::string serialize_point(const GCPolytope& P, const GCPoint& u) {
    if (u.coords.size() != P.variables.size()) throw UsageError("serialize: coordinate count mismatch");
    std::string out;
    for (std::size_t k = 0; k < P.variables.size(); ++k) {
        if (k) out += ';';
        out += std::to_string(P.variables[k].first);
        out += ',';
        out += std::to_string(P.variables[k].second);
        out += '=';
        out += to_fraction(u.coords[k]);
    }
    return out;
}

GCPoint parse_point(const GCPolytope& P, const std::string& text) {
    std::vector<std::optional<Rational>> assigned(P.variables.size());
    for (const std::string& raw : split(text, ';')) {
        std::string token = trim(raw);
        if (token.empty()) throw InputError("point: empty assignment");
        std::size_t eq = token.find('=');
        if (eq == std::string::npos) throw InputError("point: assignment '" + token + "' lacks '='");
        std::string lhs = trim(token.substr(0, eq));
        std::string rhs = trim(token.substr(eq + 1));
        std::size_t comma = lhs.find(',');
        if (comma == std::string::npos) throw InputError("point: index '" + lhs + "' lacks ','");
        int i = parse_small_int(trim(lhs.substr(0, comma)));
        int j = parse_small_int(trim(lhs.substr(comma + 1)));
        int v = P.var_index(i, j);
        if (v < 0)
            throw InputError("point: '" + lhs + "' is not a free pattern entry for this shape");
        if (assigned[static_cast<std::size_t>(v)])
            throw InputError("point: duplicate assignment for '" + lhs + "'");
        assigned[static_cast<std::size_t>(v)] = parse_rational(rhs);
    }
    GCPoint u;
    u.coords.reserve(P.variables.size());
    for (std::size_t k = 0; k < P.variables.size(); ++k) {
        if (!assigned[k])
            throw InputError("point: missing assignment for " + std::to_string(P.variables[k].first) +
                             "," + std::to_string(P.variables[k].second));
        u.coords.push_back(*assigned[k]);
    }
    return u;
}

std::string serialize_equalities(const EqualitySystem& E) {
    std::vector<std::string> tokens;
    tokens.reserve(E.relations.size());
    for (const EqRelation& rel : E.relations) {
        std::string t = std::to_string(rel.lhs.first) + "," + std::to_string(rel.lhs.second) + "=";
        if (rel.rhs_is_constant)
            t += to_fraction(rel.rhs_value);
        else
            t += std::to_string(rel.rhs_index.first) + "," + std::to_string(rel.rhs_index.second);
        tokens.push_back(std::move(t));
    }
    std::sort(tokens.begin(), tokens.end());
    std::string out;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (k) out += ';';
        out += tokens[k];
    }
    return out;
}

}  // namespace gcl

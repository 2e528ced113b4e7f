#include "gcl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcl/error.hpp"
#include "gcl/filling.hpp"
#include "gcl/monotone.hpp"
#include "gcl/oracle.hpp"
#include "gcl/polytope.hpp"
#include "gcl/render.hpp"

namespace gcl {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int parse_int(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(text, &pos);
        if (pos != text.size()) throw UsageError("");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": expected an integer, got '" + text + "'");
    }
}

FlagShape parse_shape_arg(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos || colon + 1 == text.size())
        throw UsageError("--shape: expected 'a,b,..:n'");
    std::vector<int> steps;
    for (const std::string& tok : split_list(text.substr(0, colon), ','))
        steps.push_back(parse_int(tok, "--shape"));
    int n = parse_int(text.substr(colon + 1), "--shape");
    return make_shape(std::move(steps), n);
}

Spectrum parse_lambda_arg(const std::string& text) {
    std::vector<Rational> values;
    for (const std::string& tok : split_list(text, ',')) values.push_back(parse_rational(tok));
    return make_spectrum(std::move(values));
}

Spectrum resolve_spectrum(const RunConfig& cfg) {
    if (cfg.shape.empty() == cfg.lambda.empty())
        throw UsageError("exactly one of --shape and --lambda is required");
    if (!cfg.shape.empty()) return monotone_spectrum(parse_shape_arg(cfg.shape));
    return parse_lambda_arg(cfg.lambda);
}

std::pair<int, int> parse_pair_arg(const std::string& text, const char* flag) {
    std::vector<std::string> parts = split_list(text, ',');
    if (parts.size() != 2) throw UsageError(std::string(flag) + ": expected 'a,b'");
    return {parse_int(parts[0], flag), parse_int(parts[1], flag)};
}

std::vector<long long> parse_weights_arg(const std::string& text) {
    std::vector<long long> w;
    if (text.empty()) return w;
    for (const std::string& tok : split_list(text, ',')) {
        try {
            std::size_t pos = 0;
            w.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw UsageError("");
        } catch (const std::exception&) {
            throw UsageError("--weights: expected an integer, got '" + tok + "'");
        }
    }
    return w;
}

std::string edge_token(const Edge& e) {
    std::string s(1, e.o == Orient::H ? 'H' : 'V');
    s += ':';
    s += std::to_string(e.x);
    s += ',';
    s += std::to_string(e.y);
    return s;
}

std::string term_str(const GCPolytope& P, const Term& t) {
    if (t.var < 0) return to_fraction(t.constant);
    const auto& [i, j] = P.variables[static_cast<std::size_t>(t.var)];
    return "u[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

long long num64(const Rational& r) { return to_int64(Rational(numerator(r))); }
long long den64(const Rational& r) { return to_int64(Rational(denominator(r))); }

ordered_json point_json(const GCPolytope& P, const GCPoint& u) {
    ordered_json arr = ordered_json::array();
    for (std::size_t k = 0; k < P.variables.size(); ++k) {
        ordered_json e;
        e["i"] = P.variables[k].first;
        e["j"] = P.variables[k].second;
        e["num"] = num64(u.coords[k]);
        e["den"] = den64(u.coords[k]);
        arr.push_back(std::move(e));
    }
    return arr;
}

ordered_json lambda_json(const GCPolytope& P) {
    ordered_json arr = ordered_json::array();
    for (const Rational& v : P.lambda.values) arr.push_back(to_fraction(v));
    return arr;
}

std::string lambda_str(const GCPolytope& P) {
    std::string s;
    for (const Rational& v : P.lambda.values) {
        if (!s.empty()) s += ';';
        s += to_fraction(v);
    }
    return s;
}

void cmd_polytope(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["n"] = P.n();
        j["dim"] = P.dim();
        j["lambda"] = lambda_json(P);
        ordered_json vars = ordered_json::array();
        for (const auto& [i, jj] : P.variables) vars.push_back(ordered_json{{"i", i}, {"j", jj}});
        j["variables"] = std::move(vars);
        ordered_json ineqs = ordered_json::array();
        for (const Inequality& q : P.inequalities) {
            ordered_json e;
            e["edge"] = edge_token(P.diagram.edges[static_cast<std::size_t>(q.edge)]);
            e["lo"] = term_str(P, q.lo);
            e["hi"] = term_str(P, q.hi);
            ineqs.push_back(std::move(e));
        }
        j["inequalities"] = std::move(ineqs);
        out << j.dump(2) << "\n";
        return;
    }
    out << "n: " << P.n() << "\n";
    out << "dim: " << P.dim() << "\n";
    out << "lambda: " << lambda_str(P) << "\n";
    for (const Inequality& q : P.inequalities)
        out << term_str(P, q.lo) << " <= " << term_str(P, q.hi) << "\n";
}

void cmd_faces(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    std::vector<LadderFace> faces = enumerate_faces(P.diagram, cfg.guard);
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["count"] = faces.size();
        ordered_json arr = ordered_json::array();
        for (const LadderFace& f : faces)
            arr.push_back(ordered_json{{"id", f.id}, {"dim", f.dimension}});
        j["faces"] = std::move(arr);
        out << j.dump(2) << "\n";
        return;
    }
    out << "faces: " << faces.size() << "\n";
    std::map<int, int> by_dim;
    for (const LadderFace& f : faces) ++by_dim[f.dimension];
    for (const auto& [d, c] : by_dim) out << "dim " << d << ": " << c << "\n";
    for (const LadderFace& f : faces) {
        out << "\n";
        out << "dim=" << f.dimension << " id=" << f.id << "\n";
        out << render_edges(P.diagram, f.edges);
    }
}

void cmd_lagrangian(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    std::vector<LadderFace> faces = enumerate_faces(P.diagram, cfg.guard);
    std::vector<std::pair<LadderFace, LBlockFilling>> hits;
    for (LadderFace& f : faces) {
        LBlockFilling fill = fill_l_blocks(P.diagram, f);
        if (is_lagrangian(fill)) hits.emplace_back(std::move(f), std::move(fill));
    }
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["count"] = hits.size();
        ordered_json arr = ordered_json::array();
        for (const auto& [f, fill] : hits) {
            FiberTopology topo = fiber_topology(P.diagram, f);
            ordered_json e;
            e["id"] = f.id;
            e["dim"] = f.dimension;
            e["filling"] = serialize_filling(fill);
            e["topology"] = ordered_json{
                {"torus_rank", topo.torus_rank}, {"spheres", topo.spheres}, {"label", topo.label}};
            arr.push_back(std::move(e));
        }
        j["faces"] = std::move(arr);
        out << j.dump(2) << "\n";
        return;
    }
    out << "lagrangian faces: " << hits.size() << "\n";
    for (const auto& [f, fill] : hits) {
        FiberTopology topo = fiber_topology(P.diagram, f);
        out << "\n";
        out << "dim=" << f.dimension << " topology=" << topo.label
            << " filling=" << serialize_filling(fill) << " id=" << f.id << "\n";
        out << render_filling(P.diagram, f, fill);
    }
}

void cmd_monotone(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    std::vector<MonotoneFiberReport> reports = classify_monotone(P, cfg.guard);
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["lambda"] = lambda_json(P);
        j["count"] = reports.size();
        ordered_json arr = ordered_json::array();
        for (const MonotoneFiberReport& r : reports) arr.push_back(report_to_json(P, r));
        j["reports"] = std::move(arr);
        out << j.dump(2) << "\n";
        return;
    }
    std::map<std::string, LadderFace> by_id;
    for (LadderFace& f : enumerate_faces(P.diagram, cfg.guard)) by_id[f.id] = std::move(f);
    out << "monotone fibers: " << reports.size() << "\n";
    for (const MonotoneFiberReport& r : reports) {
        out << "\n";
        out << "face: " << r.face_id << "\n";
        out << "dim: " << r.dim << "\n";
        out << "topology: " << r.topology.label << "\n";
        out << "center: " << serialize_point(P, r.center) << "\n";
        for (const DiscGenerator& g : r.generators)
            out << "generator: (" << g.a << "," << g.b << ") c=" << to_fraction(g.c)
                << " psi_center=" << to_fraction(g.psi_center) << " maslov=" << to_plain(g.maslov)
                << " area=" << to_fraction(g.area) << "\n";
        const LadderFace& f = by_id.at(r.face_id);
        out << render_filling(P.diagram, f, fill_l_blocks(P.diagram, f));
    }
}

void cmd_center(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    GCPoint u = center_of_polytope(P);
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["center"] = point_json(P, u);
        out << j.dump(2) << "\n";
        return;
    }
    out << serialize_point(P, u) << "\n";
}

void cmd_codim(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    if (cfg.at.empty()) throw UsageError("codim: --at a,b is required");
    auto [a, b] = parse_pair_arg(cfg.at, "--at");
    int codim = codim_max_component(P, a, b);
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["a"] = a;
        j["b"] = b;
        j["codim"] = codim;
        out << j.dump(2) << "\n";
        return;
    }
    out << codim << "\n";
}

void cmd_carrier(const RunConfig& cfg, const GCPolytope& P, std::ostream& out) {
    if (cfg.point.empty()) throw UsageError("carrier: --point is required");
    GCPoint u = parse_point(P, cfg.point);
    LadderFace f = carrier_face(P, u);
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["face_id"] = f.id;
        j["dim"] = f.dimension;
        out << j.dump(2) << "\n";
        return;
    }
    out << "id: " << f.id << "\n";
    out << "dim: " << f.dimension << "\n";
    out << render_edges(P.diagram, f.edges);
}

void cmd_maslov(const RunConfig& cfg, std::ostream& out) {
    long long m = maslov_from_weights(parse_weights_arg(cfg.weights));
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        j["maslov"] = m;
        out << j.dump(2) << "\n";
        return;
    }
    out << m << "\n";
}

void cmd_verify(const RunConfig& cfg, const Spectrum& lambda, std::ostream& out) {
    OracleReport r = verify(lambda, cfg.samples, cfg.seed, cfg.tol);
    ordered_json rep = report_to_json(r);
    if (cfg.format == "json") {
        ordered_json j;
        j["schema"] = 1;
        for (auto& [key, value] : rep.items()) j[key] = std::move(value);
        out << j.dump(2) << "\n";
        return;
    }
    for (auto& [key, value] : rep.items()) out << key << ": " << value.dump() << "\n";
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "text" && cfg.format != "json")
        throw UsageError("--format: expected 'text' or 'json'");

    std::ostringstream payload;
    if (cfg.command == "maslov") {
        cmd_maslov(cfg, payload);
    } else {
        Spectrum lambda = resolve_spectrum(cfg);
        if (cfg.command == "verify") {
            cmd_verify(cfg, lambda, payload);
        } else {
            GCPolytope P = build_polytope(lambda);
            if (cfg.command == "polytope")
                cmd_polytope(cfg, P, payload);
            else if (cfg.command == "faces")
                cmd_faces(cfg, P, payload);
            else if (cfg.command == "lagrangian")
                cmd_lagrangian(cfg, P, payload);
            else if (cfg.command == "monotone")
                cmd_monotone(cfg, P, payload);
            else if (cfg.command == "center")
                cmd_center(cfg, P, payload);
            else if (cfg.command == "codim")
                cmd_codim(cfg, P, payload);
            else if (cfg.command == "carrier")
                cmd_carrier(cfg, P, payload);
            else
                throw UsageError("unknown command '" + cfg.command + "'");
        }
    }

    if (cfg.out_path.empty()) {
        out << payload.str();
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + cfg.out_path + "'");
    file << payload.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Gelfand-Cetlin ladder toolkit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool takes_spectrum) {
        sub->add_option("--format", cfg.format, "Output format: text or json");
        sub->add_option("--out", cfg.out_path, "Write the report to a file");
        if (takes_spectrum) {
            sub->add_option("--shape", cfg.shape, "Flag shape a,b,..:n (monotone spectrum)");
            sub->add_option("--lambda", cfg.lambda, "Explicit non-increasing spectrum v1,v2,..");
        }
        return sub;
    };
    auto add_guards = [&](CLI::App* sub) {
        sub->add_option("--max-faces", cfg.guard.max_subgraphs, "Enumeration cap");
        sub->add_option("--max-seconds", cfg.guard.max_seconds, "Enumeration time budget");
        return sub;
    };

    add_common(app.add_subcommand("polytope", "Print the interlacing inequality system"), true);
    add_guards(add_common(app.add_subcommand("faces", "Enumerate polytope faces"), true));
    add_guards(add_common(
        app.add_subcommand("lagrangian", "Enumerate faces with Lagrangian fibers"), true));
    add_guards(add_common(
        app.add_subcommand("monotone", "Classify monotone Lagrangian fibers"), true));
    add_common(app.add_subcommand("center", "Print the distinguished interior point"), true);
    CLI::App* codim = add_common(
        app.add_subcommand("codim", "Codimension of the maximum locus of a partial trace"), true);
    codim->add_option("--at", cfg.at, "Anti-diagonal position a,b");
    CLI::App* carrier =
        add_common(app.add_subcommand("carrier", "Smallest face containing a point"), true);
    carrier->add_option("--point", cfg.point, "Pattern point i,j=p/q;..");
    CLI::App* maslov =
        add_common(app.add_subcommand("maslov", "Maslov index from fixed-point weights"), false);
    maslov->add_option("--weights", cfg.weights, "Integer weights w1,w2,..");
    CLI::App* verify =
        add_common(app.add_subcommand("verify", "Sample random orbit points and check them"), true);
    verify->add_option("--samples", cfg.samples, "Number of samples");
    verify->add_option("--seed", cfg.seed, "RNG seed");
    verify->add_option("--tol", cfg.tol, "Violation tolerance");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        cfg.command = app.get_subcommands().front()->get_name();
        execute(cfg, out);
        return 0;
    } catch (const CLI::Success&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const LimitError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace gcl

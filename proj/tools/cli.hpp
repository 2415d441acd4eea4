#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubetopo/cubetopo.hpp"

namespace cubetopo::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInputError = 2, kResourceError = 3 };

struct RunConfig {
    std::string input;
    std::string relations_path;
    std::string coeffs = "Z";
    std::string format;  // empty: subcommand default
    bool constants = false;
    std::vector<int> dims;  // 1-based
    int dim_cap = kMaxDimension;
    std::size_t face_cap = kMaxFaces;

    std::string check;
    std::string flavor;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    int min_dim = 1;
    int max_dim = 10;
    int min_clauses = 1;
    int max_clauses = 25;
    int clause_length = 3;
    int wedges = 2;
    int total_dim = 14;
    bool one_valid = false;
    bool no_timing = false;
};

struct UsageError : Error {
    using Error::Error;
};

inline std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

enum class InputKind { Dimacs, VertexSet, Csp };

inline InputKind detect(std::string_view text) {
    for (const auto& line : text::tokenize(text, '#')) {
        if (line.tokens.empty()) continue;
        const auto t = line.tokens.front();
        if (t == "c" || t == "p") return InputKind::Dimacs;
        if (t == "vset") return InputKind::VertexSet;
        if (t == "dim") return InputKind::Csp;
        throw ParseError(line.number, "unrecognised input; expected DIMACS, 'vset' or 'dim' header");
    }
    throw ParseError(0, "empty input");
}

inline Formula load_formula(const RunConfig& c, std::string_view text) {
    switch (detect(text)) {
        case InputKind::Dimacs: return parse_dimacs(text);
        case InputKind::Csp: {
            if (c.relations_path.empty()) throw UsageError("CSP input needs --relations");
            const auto rels = parse_relations(read_input(c.relations_path));
            return parse_csp(text, rels);
        }
        case InputKind::VertexSet: break;
    }
    throw UsageError("expected a formula, got a vertex set");
}

inline VertexSet load_solutions(const RunConfig& c) {
    const std::string text = read_input(c.input);
    if (detect(text) == InputKind::VertexSet) {
        auto v = parse_vertex_set(text);
        require_dimension(v.dimension(), c.dim_cap);
        return v;
    }
    return enumerate_solutions(load_formula(c, text), c.dim_cap);
}

inline Coefficients parse_coeffs(const std::string& s) {
    if (s == "Z") return Coefficients::Integers;
    if (s == "Q") return Coefficients::Rationals;
    if (s == "Z2") return Coefficients::Mod2;
    throw UsageError("unknown coefficients '" + s + "' (Z, Q or Z2)");
}

inline bool want_json(const RunConfig& c, bool json_default) {
    if (c.format.empty()) return json_default;
    return c.format == "json";
}

inline std::vector<int> zero_based_dims(const RunConfig& c, int dimension) {
    std::vector<int> out;
    for (int d : c.dims) {
        if (d < 1 || d > dimension)
            throw PreconditionError("projection dimension " + std::to_string(d) + " outside 1.." +
                                    std::to_string(dimension));
        out.push_back(d - 1);
    }
    return out;
}

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
    const auto rels = parse_relations(read_input(c.input));
    const auto v = schaefer_classify(rels, c.constants);
    if (want_json(c, true)) {
        out << to_json_value(v, rels).dump() << '\n';
    } else {
        out << (v.tractable ? "tractable " : "np-complete");
        if (v.witness) out << condition_name(*v.witness);
        out << '\n';
    }
    return kOk;
}

inline int cmd_solve(const RunConfig& c, std::ostream& out) {
    const auto v = load_solutions(c);
    if (want_json(c, false))
        out << to_json_value(v).dump() << '\n';
    else
        write_vertex_set(out, v);
    return kOk;
}

inline int cmd_betti(const RunConfig& c, std::ostream& out) {
    const auto coeffs = parse_coeffs(c.coeffs);
    const auto k = induce_complex(load_solutions(c), c.face_cap);
    const auto h = homology(k, coeffs);
    const auto f = f_vector(k);
    if (want_json(c, true)) {
        auto j = to_json_value(h);
        j["f"] = f;
        out << j.dump() << '\n';
    } else {
        out << "coeffs " << coefficients_tag(coeffs) << "\nbetti";
        for (auto b : h.betti) out << ' ' << b;
        out << "\ntorsion";
        for (const auto& t : h.torsion) {
            out << ' ';
            if (t.empty()) out << '-';
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
        }
        out << "\nf";
        for (auto n : f) out << ' ' << n;
        out << '\n';
    }
    return kOk;
}

inline int cmd_project(const RunConfig& c, std::ostream& out) {
    const auto v = load_solutions(c);
    const auto dims = zero_based_dims(c, v.dimension());
    const auto p = project(v, dims);
    if (want_json(c, false))
        out << to_json_value(p).dump() << '\n';
    else
        write_vertex_set(out, p);
    return kOk;
}

inline int cmd_reduce(const RunConfig& c, std::ostream& out, bool kpn) {
    const std::string text = read_input(c.input);
    if (detect(text) != InputKind::Dimacs) throw UsageError("reductions take DIMACS CNF input");
    const auto f = parse_dimacs(text);
    require_dimension(f.dimension, c.dim_cap);
    auto r = to_3sat(f);
    if (kpn) {
        auto second = to_kpn322(r.formula);
        second.projection_dims.insert(second.projection_dims.begin(), r.projection_dims.begin(),
                                      r.projection_dims.end());
        std::sort(second.projection_dims.begin(), second.projection_dims.end());
        for (auto& v : r.variable_map) v = second.variable_map[static_cast<std::size_t>(v)];
        second.variable_map = r.variable_map;
        r = std::move(second);
    }
    require_dimension(r.formula.dimension, c.dim_cap);
    if (want_json(c, false)) {
        out << to_json_value(r).dump() << '\n';
    } else {
        out << "c projection_dims";
        for (int d : r.projection_dims) out << ' ' << d + 1;
        out << '\n';
        write_dimacs(out, r.formula);
    }
    return kOk;
}

inline int cmd_realize(const RunConfig& c, std::ostream& out) {
    const auto s = parse_simplicial(read_input(c.input));
    const auto f = vertexset_to_cnf(simplicial_to_vertexset(s, c.dim_cap));
    if (want_json(c, false))
        out << Json{{"dimension", f.dimension}, {"clauses", f.clauses.size()}, {"dimacs", emit_dimacs(f)}}.dump()
            << '\n';
    else
        write_dimacs(out, f);
    return kOk;
}

inline GeneratorParams generator_params(const RunConfig& c, Flavor fallback) {
    GeneratorParams p;
    p.min_dimension = c.min_dim;
    p.max_dimension = c.max_dim;
    p.min_constraints = c.min_clauses;
    p.max_constraints = c.max_clauses;
    p.max_clause_length = c.clause_length;
    p.seed = c.seed;
    p.trials = c.trials;
    p.flavor = fallback;
    if (!c.flavor.empty()) {
        const auto f = parse_flavor(c.flavor);
        if (!f) throw UsageError("unknown flavor '" + c.flavor + "'");
        p.flavor = *f;
    }
    if (p.max_dimension > c.dim_cap)
        throw ResourceError("generator dimension " + std::to_string(p.max_dimension) +
                            " exceeds the cap of " + std::to_string(c.dim_cap));
    return p;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
    CheckReport report;
    if (c.check == "tractable-homology") {
        report = check_tractable_homology(generator_params(c, Flavor::TwoSat));
    } else if (c.check == "affine-structure") {
        report = check_affine_structure(generator_params(c, Flavor::Affine));
    } else if (c.check == "wedge-union") {
        report = check_wedge_union(generator_params(c, Flavor::TwoSat), c.wedges);
    } else if (c.check == "trivially-valid") {
        std::vector<Relation> rels;
        if (c.relations_path.empty())
            rels.push_back(Relation(3, {0b000, 0b011, 0b101}, "R0"));
        else
            rels = parse_relations(read_input(c.relations_path));
        report = check_trivially_valid(generator_params(c, Flavor::Cnf), rels, c.one_valid);
    } else if (c.check == "one-in-three") {
        report = check_one_in_three_structure(generator_params(c, Flavor::OneInThree));
    } else if (c.check == "projection") {
        report = check_projection_constructions(generator_params(c, Flavor::TwoSat));
    } else if (c.check == "reductions") {
        report = check_reductions(generator_params(c, Flavor::Cnf), c.total_dim);
    } else {
        throw UsageError("unknown check '" + c.check + "'");
    }
    if (want_json(c, true))
        out << to_json_value(report, !c.no_timing).dump() << '\n';
    else
        out << report.check << (report.passed() ? " passed" : " FAILED") << " trials=" << report.trials
            << " failures=" << report.failures.size() << " seed=" << report.seed << '\n';
    return report.passed() ? kOk : kCheckFailed;
}

/// Prints one `error:<code>: <message>` line and returns the exit status.
inline int report_error(std::ostream& err, std::string_view code, std::string_view message, int status) {
    err << "error:" << code << ": " << message << '\n';
    return status;
}

/// `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app("Topology of boolean constraint satisfaction solution spaces", "cubetopo");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file of option values, e.g. [verify] trials = 500");
    RunConfig c;

    auto input_opts = [&](CLI::App* s) {
        s->add_option("input", c.input, "Input file ('-' for stdin)")->required();
        s->add_option("--relations", c.relations_path, "Relation file for CSP input");
    };
    auto common = [&](CLI::App* s) {
        s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        s->add_option("--dim-cap", c.dim_cap, "Lower the variable cap")
            ->check(CLI::Range(1, kMaxDimension));
        s->add_option("--face-cap", c.face_cap, "Lower the face budget")
            ->check(CLI::Range(std::size_t{1}, kMaxFaces));
    };

    auto* classify = app.add_subcommand("classify", "Schaefer classification of a relation file");
    classify->add_option("input", c.input, "Relation file")->required();
    classify->add_flag("--constants", c.constants, "Allow constants in constraints");
    common(classify);

    auto* solve = app.add_subcommand("solve", "Enumerate satisfying assignments");
    input_opts(solve);
    common(solve);

    auto* betti = app.add_subcommand("betti", "Homology of the induced solution complex");
    input_opts(betti);
    betti->add_option("--coeffs", c.coeffs, "Z, Q or Z2")->check(CLI::IsMember({"Z", "Q", "Z2"}));
    common(betti);

    auto* proj = app.add_subcommand("project", "Project the solution set away from dimensions");
    input_opts(proj);
    proj->add_option("--dims", c.dims, "1-based dimensions to remove")->delimiter(',')->required();
    common(proj);

    auto* reduce3 = app.add_subcommand("reduce3", "Split long clauses into 3-CNF");
    reduce3->add_option("input", c.input, "DIMACS file")->required();
    common(reduce3);

    auto* reduce322 = app.add_subcommand("reduce322", "Rewrite to clauses with at most 2 positive and 2 negative literals");
    reduce322->add_option("input", c.input, "DIMACS file")->required();
    common(reduce322);

    auto* realize = app.add_subcommand("realize", "CNF whose solution complex realizes a simplicial complex");
    realize->add_option("input", c.input, "Simplicial complex file")->required();
    common(realize);

    auto* verify = app.add_subcommand("verify", "Run a randomized property check");
    verify->add_option("check", c.check, "tractable-homology, affine-structure, wedge-union, "
                                         "trivially-valid, one-in-three, projection, reductions")
        ->required();
    verify->add_option("--flavor", c.flavor, "Instance flavor");
    verify->add_option("--seed", c.seed, "Seed");
    verify->add_option("--trials", c.trials, "Number of trials");
    verify->add_option("--min-dim", c.min_dim, "Smallest generated dimension");
    verify->add_option("--max-dim", c.max_dim, "Largest generated dimension");
    verify->add_option("--min-clauses", c.min_clauses, "Fewest generated constraints");
    verify->add_option("--max-clauses", c.max_clauses, "Most generated constraints");
    verify->add_option("--clause-length", c.clause_length, "Longest generated clause");
    verify->add_option("--wedges", c.wedges, "Number of wedges for wedge-union");
    verify->add_option("--total-dim", c.total_dim, "Variable cap after reductions");
    verify->add_option("--relations", c.relations_path, "Relation file for trivially-valid");
    verify->add_flag("--one-valid", c.one_valid, "Check the all-ones assignment");
    verify->add_flag("--no-timing", c.no_timing, "Omit elapsed time from the report");
    common(verify);

    if (!args.empty() && !args.front().empty() && args.front()[0] != '-' &&
        !app.get_subcommand_no_throw(args.front()))
        return report_error(err, "usage", "unknown subcommand '" + args.front() + "'", kInputError);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        return report_error(err, "usage", e.what(), kInputError);
    }

    try {
        if (classify->parsed()) return cmd_classify(c, out);
        if (solve->parsed()) return cmd_solve(c, out);
        if (betti->parsed()) return cmd_betti(c, out);
        if (proj->parsed()) return cmd_project(c, out);
        if (reduce3->parsed()) return cmd_reduce(c, out, false);
        if (reduce322->parsed()) return cmd_reduce(c, out, true);
        if (realize->parsed()) return cmd_realize(c, out);
        if (verify->parsed()) return cmd_verify(c, out);
    } catch (const UsageError& e) {
        return report_error(err, "usage", e.what(), kInputError);
    } catch (const ParseError& e) {
        return report_error(err, "parse", e.what(), kInputError);
    } catch (const PreconditionError& e) {
        return report_error(err, "precondition", e.what(), kInputError);
    } catch (const ResourceError& e) {
        return report_error(err, "resource", e.what(), kResourceError);
    } catch (const std::bad_alloc&) {
        return report_error(err, "resource", "out of memory", kResourceError);
    }
    return report_error(err, "usage", "no subcommand", kInputError);
}

}  // namespace cubetopo::cli

// aahull: closed convex hulls of sets represented by arithmetic automata.
//
//   aahull hull FILE|- [--output v|h|both] [--json] [--trace] [--no-normalize]
//   aahull compile CONSTRAINTS|FILE [domain nat|int] [basis R] [dim M] [--hull ...]
//   aahull enumerate FILE [--depth K]
//   aahull validate FILE

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aahull/aahull.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json vector_json(const aahull::QVector& v) {
    json row = json::array();
    for (const auto& e : v) row.push_back(aahull::to_string(e));
    return row;
}

json constraint_json(const aahull::HConstraint& c, const char* rel) {
    json a = json::array();
    for (const auto& z : c.normal) a.push_back(aahull::to_string(z));
    return {{"a", a}, {"b", aahull::to_string(aahull::Integer(-c.bound))}, {"rel", rel}};
}

struct OutputFlags {
    std::string output = "both";
    bool as_json = false;
};

void print_hull(const aahull::DigitContext& ctx, const aahull::VPolyhedron& p, const OutputFlags& flags) {
    const bool want_v = flags.output != "h";
    const bool want_h = flags.output != "v";
    if (flags.as_json) {
        json out;
        out["basis"] = std::to_string(ctx.basis());
        out["dim"] = std::to_string(ctx.dim());
        out["empty"] = p.is_empty();
        if (want_v) {
            out["points"] = json::array();
            out["rays"] = json::array();
            for (const auto& x : p.points()) out["points"].push_back(vector_json(x));
            for (const auto& r : p.rays()) out["rays"].push_back(vector_json(r));
        }
        if (want_h && !p.is_empty()) {
            const auto h = aahull::facets(p);
            out["facets"] = json::array();
            out["equalities"] = json::array();
            for (const auto& c : h.inequalities) out["facets"].push_back(constraint_json(c, "<="));
            for (const auto& c : h.equalities) out["equalities"].push_back(constraint_json(c, "="));
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::cout << "basis " << ctx.basis() << "\ndim " << ctx.dim() << "\n";
    if (p.is_empty()) {
        std::cout << "empty\n";
        return;
    }
    if (want_v) {
        std::cout << "points\n";
        for (const auto& x : p.points()) std::cout << "  " << aahull::to_string(x) << "\n";
        std::cout << "rays\n";
        for (const auto& r : p.rays()) std::cout << "  " << aahull::to_string(r) << "\n";
    }
    if (want_h) {
        const auto h = aahull::facets(p);
        std::cout << "facets\n";
        for (const auto& c : h.inequalities) std::cout << "  " << aahull::to_string(c, "<=") << "\n";
        std::cout << "equalities\n";
        for (const auto& c : h.equalities) std::cout << "  " << aahull::to_string(c, "=") << "\n";
    }
}

aahull::HullOptions hull_options(bool trace, bool no_normalize, unsigned threads) {
    aahull::HullOptions o;
    o.normalize = !no_normalize;
    o.threads = threads;
    o.trace = trace ? &std::cerr : nullptr;
    return o;
}

/// `3*x1 - x2 > 0` or a file name, followed by `key value` pairs.
aahull::ConstraintSystem constraint_system(const std::vector<std::string>& args) {
    if (args.empty()) throw UsageError("compile: missing constraints");
    std::string text = args[0];
    if (std::filesystem::is_regular_file(text)) text = slurp(text);
    std::string domain = "nat";
    int basis = 2;
    std::size_t dim = 0;
    for (std::size_t i = 1; i < args.size(); i += 2) {
        if (i + 1 >= args.size()) throw UsageError("compile: '" + args[i] + "' needs a value");
        const std::string& key = args[i];
        const std::string& value = args[i + 1];
        try {
            if (key == "domain") {
                if (value != "nat" && value != "int") throw UsageError("compile: domain must be nat or int");
                domain = value;
            } else if (key == "basis") {
                basis = std::stoi(value);
            } else if (key == "dim") {
                dim = static_cast<std::size_t>(std::stoul(value));
            } else {
                throw UsageError("compile: unknown setting '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw UsageError("compile: bad value '" + value + "' for " + key);
        }
    }
    auto atoms = aahull::parse_constraints(text, dim);
    const int m = static_cast<int>(atoms.front().coefficients.size());
    return {std::move(atoms), domain == "nat" ? aahull::Domain::Natural : aahull::Domain::Integer,
            aahull::DigitContext(basis, m)};
}

std::string join_set(const aahull::ArithmeticAutomaton& a, const std::vector<aahull::StateId>& set) {
    std::string s = "{";
    for (auto q : set) s += " " + a.name(q);
    return s + " }";
}

int run(int argc, char** argv) {
    CLI::App app{"Closed convex hulls of sets represented by arithmetic automata"};
    app.require_subcommand(1);

    OutputFlags flags;
    bool trace = false, no_normalize = false, chain_hull = false;
    unsigned threads = 1;
    std::string path;
    std::size_t depth = 3;
    std::vector<std::string> compile_args;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", flags.output, "v, h or both")->check(CLI::IsMember({"v", "h", "both"}));
        sub->add_flag("--json", flags.as_json, "machine-readable output");
        sub->add_flag("--trace", trace, "print pipeline stages to stderr");
        sub->add_flag("--no-normalize", no_normalize, "fail instead of building the counter product");
        sub->add_option("--threads", threads, "worker threads for the fixpoint")->check(CLI::Range(1u, 256u));
    };

    auto* hull_cmd = app.add_subcommand("hull", "closed convex hull of an automaton");
    hull_cmd->add_option("file", path, ".aaut file or - for stdin")->required();
    add_output(hull_cmd);

    auto* compile_cmd = app.add_subcommand("compile", "compile linear constraints to an automaton");
    compile_cmd->add_option("args", compile_args, "constraints (or file) then domain/basis/dim settings")->required();
    compile_cmd->add_flag("--hull", chain_hull, "print the hull instead of the automaton");
    add_output(compile_cmd);

    auto* enum_cmd = app.add_subcommand("enumerate", "sample points of the represented set");
    enum_cmd->add_option("file", path, ".aaut file or - for stdin")->required();
    enum_cmd->add_option("--depth", depth, "digit blocks per part")->check(CLI::Range(1, 12));
    enum_cmd->add_flag("--no-normalize", no_normalize, "fail instead of building the counter product");

    auto* validate_cmd = app.add_subcommand("validate", "check the automaton shape");
    validate_cmd->add_option("file", path, ".aaut file or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*hull_cmd) {
        const auto a = aahull::parse_automaton(slurp(path));
        print_hull(a.ctx(), aahull::hull(a, hull_options(trace, no_normalize, threads)), flags);
    } else if (*compile_cmd) {
        const auto system = constraint_system(compile_args);
        const auto a = aahull::compile(system);
        if (chain_hull) {
            print_hull(a.ctx(), aahull::hull(a, hull_options(trace, no_normalize, threads)), flags);
        } else {
            std::cout << aahull::format_automaton(a);
        }
    } else if (*enum_cmd) {
        const auto a = aahull::parse_automaton(slurp(path));
        aahull::HullOptions o;
        o.normalize = !no_normalize;
        for (const auto& x : aahull::enumerate_oracle(a, depth, o)) std::cout << aahull::to_string(x) << "\n";
    } else if (*validate_cmd) {
        const auto a = aahull::parse_automaton(slurp(path));
        const auto trimmed = aahull::trim(a);
        const auto p = aahull::validate(trimmed);
        std::cout << "states " << a.num_states() << " (live " << trimmed.num_states() << ")\n";
        std::cout << "sign " << p.sign_states.size() << "\ninteger " << p.integer_states.size() << "\ndecimal "
                  << p.decimal_states.size() << "\n";
        std::cout << "m-graph " << (aahull::is_m_graph_automaton(trimmed, p) ? "yes" : "no") << "\n";
        std::cout << "live-sets";
        for (const auto& set : aahull::live_muller_sets(trimmed)) std::cout << ' ' << join_set(trimmed, set);
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const aahull::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const aahull::ValidationError& e) {
        std::cerr << "invalid automaton: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

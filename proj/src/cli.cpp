#include "flowscope/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flowscope/extremal.hpp"
#include "flowscope/flow.hpp"
#include "flowscope/flow_io.hpp"
#include "flowscope/geometry_io.hpp"
#include "flowscope/pattern_sim.hpp"

namespace flowscope {

const char* to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::flow_found:
            return "flow-found";
        case VerdictStatus::no_flow:
            return "no-flow";
        case VerdictStatus::undecided:
            return "undecided";
        case VerdictStatus::property_holds:
            return "property-holds";
        case VerdictStatus::property_fails:
            return "property-fails";
    }
    return "?";
}

std::string Verdict::line() const {
    std::string s = std::string("VERDICT: ") + to_string(status);
    if (reason) {
        s += " reason=" + *reason;
    }
    return s;
}

namespace {

constexpr double kDefectTolerance = 1e-9;

struct Options {
    bool porcelain = false;
    std::string geometry_path;
    std::string flow_path;
    std::string out_path;
    bool oracle = false;
    std::size_t budget = FlowSearchOptions{}.budget;
    std::string partition;
    std::vector<std::string> angles;
    std::size_t random_draws = 0;
    std::uint64_t seed = 0;
    bool dump_map = false;
    std::size_t max_qubits = 12;
};

// Thrown for anything that should end in exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::size_t oracle_bound_from_env() {
    std::size_t bound = FlowSearchOptions{}.oracle_bound;
    if (const char* env = std::getenv("FLOWSCOPE_ORACLE_BOUND"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (*end != '\0') {
            throw InputError(std::string("FLOWSCOPE_ORACLE_BOUND is not a non-negative integer: ") + env);
        }
        bound = static_cast<std::size_t>(value);
    }
    return bound;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path);
    if (!file || !(file << content)) {
        throw InputError("cannot write " + path);
    }
}

std::string join_labels(const Geometry& geom, const std::vector<Vertex>& vs) {
    std::string s;
    for (Vertex v : vs) {
        if (!s.empty()) {
            s += ' ';
        }
        s += geom.label(v);
    }
    return s;
}

std::string format_complex(std::complex<double> z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.15g,%.15g)", z.real(), z.imag());
    return buf;
}

// Each command writes its report to `out` and returns {verdict, exit code}.
using Outcome = std::pair<Verdict, int>;

Outcome cmd_check_bound(const Options& opt, std::ostream& out) {
    const Geometry geom = load_geometry_file(opt.geometry_path);
    const std::size_t n = geom.vertex_count();
    const std::size_t k = geom.output_count();
    if (k < 1 || n < k) {
        throw InputError("edge bound needs n >= k >= 1 (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    const std::uint64_t bound = gamma(n, k);
    const bool pass = geom.edge_count() <= bound;
    out << "n: " << n << "\n"
        << "k: " << k << "\n"
        << "edges: " << geom.edge_count() << "\n"
        << "gamma: " << bound << "\n"
        << "bound: " << (pass ? "pass" : "reject") << "\n";
    if (pass) {
        return {{VerdictStatus::property_holds, std::nullopt}, exit_code::ok};
    }
    return {{VerdictStatus::no_flow, "edge-bound"}, exit_code::negative};
}

Outcome cmd_find_flow(const Options& opt, std::ostream& out) {
    const Geometry geom = load_geometry_file(opt.geometry_path);
    FlowSearchOptions search;
    search.budget = opt.budget;
    search.oracle_bound = oracle_bound_from_env();
    out << "n: " << geom.vertex_count() << "\n"
        << "k: " << geom.output_count() << "\n"
        << "edges: " << geom.edge_count() << "\n";

    FlowSearchResult result;
    if (opt.oracle) {
        if (geom.vertex_count() > search.oracle_bound) {
            throw InputError("--oracle accepts at most " + std::to_string(search.oracle_bound) + " vertices");
        }
        auto flow = brute_force_flow(geom, search.oracle_bound);
        result.status = flow ? FlowStatus::found : FlowStatus::absent;
        result.reason = flow ? NoFlowReason::none : NoFlowReason::oracle;
        result.flow = std::move(flow);
    } else {
        result = find_causal_flow(geom, search);
        out << "alternatives-rejected: " << result.alternatives_rejected << "\n";
        if (!result.cycle.empty()) {
            out << "first-cycle: " << join_labels(geom, result.cycle) << "\n";
        }
    }

    switch (result.status) {
        case FlowStatus::found: {
            const std::string doc = serialize_flow(geom, *result.flow);
            out << "order: " << join_labels(geom, measurement_order(*result.flow)) << "\n";
            out << "flow: " << doc;
            if (!opt.out_path.empty()) {
                write_file(opt.out_path, doc);
                out << "wrote: " << opt.out_path << "\n";
            }
            return {{VerdictStatus::flow_found, std::nullopt}, exit_code::ok};
        }
        case FlowStatus::absent:
            return {{VerdictStatus::no_flow, std::string(to_string(result.reason))}, exit_code::negative};
        case FlowStatus::undecided:
            break;
    }
    return {{VerdictStatus::undecided, std::nullopt}, exit_code::undecided};
}

Outcome cmd_verify_flow(const Options& opt, std::ostream& out) {
    const Geometry geom = load_geometry_file(opt.geometry_path);
    const CausalFlow flow = load_flow_file(opt.flow_path, geom);
    const FlowCheck check = verify_flow(geom, flow);
    out << "condition: " << to_string(check.condition) << "\n";
    if (!check.holds()) {
        out << "detail: " << check.message << "\n";
        return {{VerdictStatus::property_fails, "certificate"}, exit_code::negative};
    }
    return {{VerdictStatus::property_holds, "certificate"}, exit_code::ok};
}

Outcome cmd_gen_extremal(const Options& opt, std::ostream& out, std::ostream& report) {
    const ExtremalPartition partition = parse_partition(opt.partition);
    const ExtremalInstance inst = generate_extremal(partition);
    const std::uint64_t bound = gamma(partition.n(), partition.k());
    report << "vertices: " << inst.geometry.vertex_count() << "\n"
           << "k: " << partition.k() << "\n"
           << "edges: " << inst.geometry.edge_count() << "\n"
           << "gamma: " << bound << "\n";
    if (inst.geometry.edge_count() != bound) {
        return {{VerdictStatus::property_fails, "certificate"}, exit_code::negative};
    }
    const std::string doc = serialize_geometry(inst.geometry);
    if (opt.out_path.empty()) {
        out << doc;
    } else {
        write_file(opt.out_path, doc);
        report << "wrote: " << opt.out_path << "\n";
    }
    return {{VerdictStatus::property_holds, "certificate"}, exit_code::ok};
}

AngleMap<double> parse_angles(const Geometry& geom, const std::vector<std::string>& entries) {
    AngleMap<double> angles;
    for (const auto& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw InputError("angle \"" + entry + "\" is not label=radians");
        }
        const Vertex v = geom.vertex_of(entry.substr(0, eq));
        const std::string value = entry.substr(eq + 1);
        char* end = nullptr;
        const double theta = std::strtod(value.c_str(), &end);
        if (value.empty() || *end != '\0' || !std::isfinite(theta)) {
            throw InputError("angle \"" + entry + "\" has a bad value");
        }
        angles[v] = theta;
    }
    return angles;
}

Outcome cmd_simulate(const Options& opt, std::ostream& out) {
    const Geometry geom = load_geometry_file(opt.geometry_path);
    const CausalFlow flow = load_flow_file(opt.flow_path, geom);
    if (const FlowCheck check = verify_flow(geom, flow); !check) {
        out << "detail: " << check.message << "\n";
        return {{VerdictStatus::property_fails, "certificate"}, exit_code::negative};
    }
    std::vector<AngleMap<double>> draws;
    if (!opt.angles.empty()) {
        draws.push_back(parse_angles(geom, opt.angles));
    }
    for (std::size_t i = 0; i < opt.random_draws; ++i) {
        draws.push_back(random_angles<double>(geom, opt.seed + i));
    }
    if (draws.empty()) {
        throw InputError("simulate needs --angles or --random-angles");
    }
    bool all_ok = true;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        MeasurementPattern<double> pattern(geom, flow, draws[i]);
        const LinearMap<double> map = simulate_postselected(pattern, opt.max_qubits);
        double defect = 0;
        try {
            defect = isometry_defect(map);
        } catch (const SimulationError&) {
            out << "draw " << i << ": zero map\n";
            all_ok = false;
            continue;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", defect);
        out << "draw " << i << ": defect " << buf << "\n";
        all_ok = all_ok && defect < kDefectTolerance;
        if (opt.dump_map) {
            for (Eigen::Index r = 0; r < map.rows(); ++r) {
                for (Eigen::Index c = 0; c < map.cols(); ++c) {
                    out << (c ? " " : "") << format_complex(map(r, c));
                }
                out << "\n";
            }
        }
    }
    if (all_ok) {
        return {{VerdictStatus::property_holds, "certificate"}, exit_code::ok};
    }
    return {{VerdictStatus::property_fails, "certificate"}, exit_code::negative};
}

Outcome cmd_order(const Options& opt, std::ostream& out) {
    const Geometry geom = load_geometry_file(opt.geometry_path);
    const CausalFlow flow = load_flow_file(opt.flow_path, geom);
    if (const FlowCheck check = verify_flow(geom, flow); !check) {
        out << "detail: " << check.message << "\n";
        return {{VerdictStatus::property_fails, "certificate"}, exit_code::negative};
    }
    for (Vertex v : measurement_order(flow)) {
        out << geom.label(v) << " " << flow.ranks[v] << "\n";
    }
    return {{VerdictStatus::property_holds, "certificate"}, exit_code::ok};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Causal flow analysis for one-way measurement geometries", "flowscope"};
    app.require_subcommand(1);
    app.add_flag("--porcelain", opt.porcelain, "Print only the VERDICT line");

    auto* check = app.add_subcommand("check-bound", "Compare |E| against the edge bound kn - k(k+1)/2");
    check->add_option("geometry", opt.geometry_path, "Geometry file")->required();

    auto* find = app.add_subcommand("find-flow", "Decide whether a causal flow exists and construct one");
    find->add_option("geometry", opt.geometry_path, "Geometry file")->required();
    find->add_flag("--oracle", opt.oracle, "Use the exhaustive oracle");
    find->add_option("--budget", opt.budget, "Rejected alternatives tolerated before giving up");
    find->add_option("--out", opt.out_path, "Write the flow file here");

    auto* verify = app.add_subcommand("verify-flow", "Check a flow file against a geometry");
    verify->add_option("geometry", opt.geometry_path, "Geometry file")->required();
    verify->add_option("flow", opt.flow_path, "Flow file")->required();

    auto* gen = app.add_subcommand("gen-extremal", "Emit the saturating geometry for a partition");
    gen->add_option("--partition", opt.partition, "Comma-separated non-decreasing parts, e.g. 6,8,9")->required();
    gen->add_option("--out", opt.out_path, "Write the geometry file here instead of stdout");

    auto* sim = app.add_subcommand("simulate", "Check that a flow yields an isometry for XY angles");
    sim->add_option("geometry", opt.geometry_path, "Geometry file")->required();
    sim->add_option("flow", opt.flow_path, "Flow file")->required();
    sim->add_option("--angles", opt.angles, "label=radians pairs")->delimiter(',');
    sim->add_option("--random-angles", opt.random_draws, "Number of uniform random angle draws");
    sim->add_option("--seed", opt.seed, "Seed of the first random draw");
    sim->add_flag("--dump-map", opt.dump_map, "Print the post-selected map row by row");
    sim->add_option("--max-qubits", opt.max_qubits, "Simulation size cap");

    auto* order = app.add_subcommand("order", "Print the measurement order of a flow");
    order->add_option("geometry", opt.geometry_path, "Geometry file")->required();
    order->add_option("flow", opt.flow_path, "Flow file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_code::input_error;
    }

    std::ostringstream detail;
    std::ostream& report = opt.porcelain ? static_cast<std::ostream&>(detail) : out;
    Outcome outcome;
    try {
        if (check->parsed()) {
            outcome = cmd_check_bound(opt, report);
        } else if (find->parsed()) {
            outcome = cmd_find_flow(opt, report);
        } else if (verify->parsed()) {
            outcome = cmd_verify_flow(opt, report);
        } else if (gen->parsed()) {
            // The geometry document owns stdout unless --out is given.
            std::ostream& gen_report = opt.out_path.empty() ? (opt.porcelain ? report : err) : report;
            outcome = cmd_gen_extremal(opt, out, gen_report);
            if (opt.out_path.empty()) {
                err << outcome.first.line() << "\n";
                return outcome.second;
            }
        } else if (sim->parsed()) {
            outcome = cmd_simulate(opt, report);
        } else {
            outcome = cmd_order(opt, report);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
    out << outcome.first.line() << "\n";
    return outcome.second;
}

}  // namespace flowscope

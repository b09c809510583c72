#include "flowscope/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flowscope/extremal.hpp"
#include "flowscope/geometry_io.hpp"
#include "gtest/gtest.h"

using namespace flowscope;

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;

    [[nodiscard]] std::string last_line() const {
        std::string text = out;
        while (!text.empty() && text.back() == '\n') {
            text.pop_back();
        }
        return text.substr(text.rfind('\n') + 1);
    }
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("flowscope_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string path(const std::string& name) { return (dir_ / name).string(); }

    fs::path dir_;
};

constexpr const char* kPath = R"({"vertices": ["v1", "v2", "v3"], "edges": [["v1", "v2"], ["v2", "v3"]],
  "inputs": ["v1"], "outputs": ["v3"]})";

constexpr const char* kSixCycle = R"({
  "vertices": ["a0", "a1", "a2", "b0", "b1", "b2"],
  "edges": [["a0", "b0"], ["b0", "a1"], ["a1", "b1"], ["b1", "a2"], ["a2", "b2"], ["b2", "a0"]],
  "inputs": ["a0", "a1", "a2"],
  "outputs": ["b0", "b1", "b2"]
})";

std::string alternating_cycle_json(int m) {
    std::string vertices;
    std::string edges;
    std::string inputs;
    std::string outputs;
    for (int i = 0; i < m; ++i) {
        const std::string a = "\"a" + std::to_string(i) + "\"";
        const std::string b = "\"b" + std::to_string(i) + "\"";
        const std::string next = "\"a" + std::to_string((i + 1) % m) + "\"";
        const std::string sep = i ? "," : "";
        vertices += sep + a + "," + b;
        edges += sep + "[" + a + "," + b + "],[" + b + "," + next + "]";
        inputs += sep + a;
        outputs += sep + b;
    }
    return R"({"vertices":[)" + vertices + R"(],"edges":[)" + edges + R"(],"inputs":[)" + inputs +
           R"(],"outputs":[)" + outputs + "]}";
}

}  // namespace

TEST_F(CliTest, check_bound_on_extremal_instance) {
    const Geometry g = generate_extremal(ExtremalPartition({6, 8, 9})).geometry;
    const std::string geom = file("g.json", serialize_geometry(g));
    CliRun r = run({"check-bound", geom});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("edges: 63\n"), std::string::npos);
    EXPECT_NE(r.out.find("gamma: 63\n"), std::string::npos);
    EXPECT_EQ(r.last_line(), "VERDICT: property-holds");

    // Add the first missing edge.
    std::vector<Edge> edges = g.graph().edges();
    for (Vertex u = 0; u < g.vertex_count() && edges.size() == 63; ++u) {
        for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
            if (!g.graph().adjacent(u, v)) {
                edges.emplace_back(u, v);
                break;
            }
        }
    }
    Geometry denser(Graph(g.vertex_count(), edges), g.inputs(), g.outputs(), g.labels());
    CliRun reject = run({"check-bound", file("denser.json", serialize_geometry(denser))});
    EXPECT_EQ(reject.code, 1);
    EXPECT_EQ(reject.last_line(), "VERDICT: no-flow reason=edge-bound");
}

TEST_F(CliTest, check_bound_input_errors) {
    const std::string no_outputs =
        file("k.json", R"({"vertices": ["a"], "edges": [], "inputs": [], "outputs": []})");
    EXPECT_EQ(run({"check-bound", no_outputs}).code, 2);
    EXPECT_EQ(run({"check-bound", path("missing.json")}).code, 2);
    CliRun bad = run({"check-bound", file("bad.json", "{\"vertices\": [")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("error:"), std::string::npos);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
}

TEST_F(CliTest, find_flow_on_path_and_verify) {
    const std::string geom = file("path.json", kPath);
    const std::string flow = path("flow.json");
    CliRun r = run({"find-flow", geom, "--out", flow});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("order: v1 v2\n"), std::string::npos);
    EXPECT_EQ(r.last_line(), "VERDICT: flow-found");

    CliRun v = run({"verify-flow", geom, flow});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.last_line(), "VERDICT: property-holds reason=certificate");

    CliRun o = run({"order", geom, flow});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("v1 0\nv2 1\n"), std::string::npos);
}

TEST_F(CliTest, verify_rejects_broken_flow) {
    const std::string geom = file("path.json", kPath);
    const std::string flow =
        file("flow.json", R"({"successor": {"v1": "v2", "v2": "v3"}, "ranks": {"v1": 2, "v2": 1, "v3": 0}})");
    CliRun v = run({"verify-flow", geom, flow});
    EXPECT_EQ(v.code, 1);
    EXPECT_NE(v.out.find("condition: successor-order"), std::string::npos);
    EXPECT_EQ(v.last_line(), "VERDICT: property-fails reason=certificate");
}

TEST_F(CliTest, find_flow_six_cycle) {
    const std::string geom = file("c6.json", kSixCycle);
    CliRun r = run({"find-flow", geom});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("first-cycle: a0 a1 a2\n"), std::string::npos);
    EXPECT_EQ(r.last_line(), "VERDICT: no-flow reason=cyclic-D");

    CliRun oracle = run({"find-flow", geom, "--oracle"});
    EXPECT_EQ(oracle.code, 1);
    EXPECT_EQ(oracle.last_line(), "VERDICT: no-flow reason=oracle");

    CliRun porcelain = run({"--porcelain", "find-flow", geom});
    EXPECT_EQ(porcelain.out, "VERDICT: no-flow reason=cyclic-D\n");
}

TEST_F(CliTest, budget_exhaustion_is_undecided_and_oracle_bound_is_configurable) {
    const std::string geom = file("c12.json", alternating_cycle_json(6));
    CliRun r = run({"find-flow", geom, "--budget", "0"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.last_line(), "VERDICT: undecided");

    EXPECT_EQ(run({"find-flow", geom, "--oracle"}).code, 2);
    ::setenv("FLOWSCOPE_ORACLE_BOUND", "12", 1);
    CliRun raised = run({"find-flow", geom, "--budget", "0"});
    CliRun oracle = run({"find-flow", geom, "--oracle"});
    ::setenv("FLOWSCOPE_ORACLE_BOUND", "twelve", 1);
    CliRun garbage = run({"find-flow", geom});
    ::unsetenv("FLOWSCOPE_ORACLE_BOUND");
    EXPECT_EQ(raised.code, 1);
    EXPECT_EQ(raised.last_line(), "VERDICT: no-flow reason=oracle");
    EXPECT_EQ(oracle.code, 1);
    EXPECT_EQ(garbage.code, 2);
}

TEST_F(CliTest, gen_extremal_to_stdout_and_file) {
    CliRun r = run({"gen-extremal", "--partition", "6,8,9"});
    EXPECT_EQ(r.code, 0);
    Geometry g = load_geometry(r.out);
    EXPECT_EQ(g.vertex_count(), 23u);
    EXPECT_EQ(g.edge_count(), 63u);
    EXPECT_NE(r.err.find("edges: 63\n"), std::string::npos);
    EXPECT_NE(r.err.find("VERDICT: property-holds"), std::string::npos);

    const std::string out = path("g.json");
    CliRun f = run({"gen-extremal", "--partition", "2,3", "--out", out});
    EXPECT_EQ(f.code, 0);
    EXPECT_EQ(f.last_line(), "VERDICT: property-holds reason=certificate");
    EXPECT_EQ(load_geometry_file(out).edge_count(), 7u);

    EXPECT_EQ(run({"gen-extremal", "--partition", "3,2"}).code, 2);
    EXPECT_EQ(run({"gen-extremal", "--partition", "0"}).code, 2);
}

TEST_F(CliTest, simulate_generated_instance) {
    const std::string geom = path("g.json");
    const std::string flow = path("f.json");
    ASSERT_EQ(run({"gen-extremal", "--partition", "2,3,4", "--out", geom}).code, 0);
    ASSERT_EQ(run({"find-flow", geom, "--out", flow}).code, 0);
    CliRun r = run({"simulate", geom, flow, "--random-angles", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("draw 4: defect"), std::string::npos);
    EXPECT_EQ(r.last_line(), "VERDICT: property-holds reason=certificate");

    CliRun explicit_angles = run({"simulate", geom, flow, "--angles",
                               "v1_1=0,v2_1=0.5,v2_2=1,v3_1=1.5,v3_2=2,v3_3=2.5", "--dump-map"});
    EXPECT_EQ(explicit_angles.code, 0);
    EXPECT_NE(explicit_angles.out.find("draw 0: defect"), std::string::npos);

    EXPECT_EQ(run({"simulate", geom, flow}).code, 2);
    EXPECT_EQ(run({"simulate", geom, flow, "--angles", "v1_1=x"}).code, 2);
    EXPECT_EQ(run({"simulate", geom, flow, "--random-angles", "1", "--max-qubits", "4"}).code, 2);
}

TEST_F(CliTest, simulate_small_map_dump) {
    const std::string geom =
        file("e.json", R"({"vertices": ["a", "b"], "edges": [["a", "b"]], "inputs": ["a"], "outputs": ["b"]})");
    const std::string flow = file("f.json", R"({"successor": {"a": "b"}, "ranks": {"a": 0, "b": 1}})");
    CliRun r = run({"simulate", geom, flow, "--angles", "a=0", "--dump-map"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(0.5,0) (0.5,0)\n(0.5,0) (-0.5,0)\n"), std::string::npos) << r.out;
}

#include "flowscope/pattern_sim.hpp"

#include <random>

#include "flowscope/extremal.hpp"
#include "gtest/gtest.h"

using namespace flowscope;

namespace {

using Complex = std::complex<double>;

Geometry make(std::size_t n, std::vector<Edge> edges, std::vector<Vertex> inputs, std::vector<Vertex> outputs) {
    return Geometry(Graph(n, edges), std::move(inputs), std::move(outputs));
}

// Sums the post-selected amplitude over every computational basis assignment
// directly: each assignment contributes (-1)^{edges with both ends set} and
// a phase e^{-i theta_v} per set measured vertex.
LinearMap<double> direct_sum_map(const Geometry& g, const AngleMap<double>& angles) {
    const std::size_t n = g.vertex_count();
    const auto& in = g.inputs();
    const auto& out = g.outputs();
    LinearMap<double> v = LinearMap<double>::Zero(Eigen::Index(1) << out.size(), Eigen::Index(1) << in.size());
    const double norm = std::pow(2.0, -double(g.non_inputs().size() + g.non_outputs().size()) / 2);
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
        auto set = [&](Vertex u) { return ((x >> u) & 1U) != 0; };
        std::size_t col = 0;
        for (Vertex u : in) {
            col = (col << 1) | set(u);
        }
        std::size_t row = 0;
        for (Vertex u : out) {
            row = (row << 1) | set(u);
        }
        double sign = 1;
        for (const auto& [a, b] : g.graph().edges()) {
            if (set(a) && set(b)) {
                sign = -sign;
            }
        }
        Complex term = sign * norm;
        for (Vertex u : g.non_outputs()) {
            if (set(u)) {
                term *= std::polar(1.0, -angles.at(u));
            }
        }
        v(Eigen::Index(row), Eigen::Index(col)) += term;
    }
    return v;
}

Geometry random_geometry(std::mt19937_64& rng, std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w = u + 1; w < n; ++w) {
            if (rng() % 2 == 0) {
                edges.emplace_back(u, w);
            }
        }
    }
    std::vector<Vertex> inputs;
    std::vector<Vertex> outputs;
    for (Vertex v = 0; v < n; ++v) {
        if (rng() % 3 == 0) {
            inputs.push_back(v);
        }
        if (rng() % 2 == 0) {
            outputs.push_back(v);
        }
    }
    return make(n, edges, inputs, outputs);
}

Geometry six_cycle() {
    return make(6, {{0, 3}, {3, 1}, {1, 4}, {4, 2}, {2, 5}, {5, 0}}, {0, 1, 2}, {3, 4, 5});
}

}  // namespace

TEST(simulate, single_edge_is_hadamard) {
    Geometry g = make(2, {{0, 1}}, {0}, {1});
    AngleMap<double> angles{{0, 0.0}};
    const std::vector<Vertex> schedule{0};
    auto v = simulate_postselected<double>(g, angles, schedule);
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    EXPECT_LT((v * std::sqrt(2.0) - h / std::sqrt(2.0)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(isometry_defect(v), 1e-12);
}

TEST(simulate, unmeasured_geometry_is_identity_or_cz) {
    Geometry empty = make(2, {}, {0, 1}, {0, 1});
    auto v = simulate_postselected<double>(empty, {}, std::vector<Vertex>{});
    EXPECT_LT((v - LinearMap<double>::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
    Geometry edge = make(2, {{0, 1}}, {0, 1}, {0, 1});
    auto cz = simulate_postselected<double>(edge, {}, std::vector<Vertex>{});
    EXPECT_EQ(cz(3, 3), Complex(-1));
    EXPECT_EQ(cz(2, 2), Complex(1));
}

TEST(simulate, matches_direct_sum_oracle) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        Geometry g = random_geometry(rng, 1 + rng() % 6);
        auto angles = random_angles<double>(g, rng());
        std::vector<Vertex> schedule = g.non_outputs();
        std::shuffle(schedule.begin(), schedule.end(), rng);
        auto v = simulate_postselected<double>(g, angles, schedule);
        auto expected = direct_sum_map(g, angles);
        ASSERT_EQ(v.rows(), expected.rows());
        ASSERT_EQ(v.cols(), expected.cols());
        ASSERT_LT((v - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(simulate, flows_give_isometries) {
    std::mt19937_64 rng(23);
    int flows = 0;
    for (int trial = 0; trial < 2000 && flows < 150; ++trial) {
        Geometry g = random_geometry(rng, 1 + rng() % 8);
        auto result = find_causal_flow(g);
        if (!result.flow) {
            continue;
        }
        ++flows;
        MeasurementPattern<double> pattern(g, *result.flow, random_angles<double>(g, rng()));
        ASSERT_LT(isometry_defect(simulate_postselected(pattern)), 1e-9);
    }
    EXPECT_EQ(flows, 150);
}

TEST(simulate, extremal_instances_give_isometries) {
    for (const auto& p : partitions_of(7)) {
        auto inst = generate_extremal(p);
        auto result = find_causal_flow(inst.geometry);
        ASSERT_TRUE(result.flow);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            MeasurementPattern<double> pattern(inst.geometry, *result.flow, random_angles<double>(inst.geometry, seed));
            ASSERT_LT(isometry_defect(simulate_postselected(pattern)), 1e-9);
        }
    }
}

TEST(simulate, float_scalar) {
    auto inst = generate_extremal(ExtremalPartition({2, 3}));
    auto result = find_causal_flow(inst.geometry);
    ASSERT_TRUE(result.flow);
    MeasurementPattern<float> pattern(inst.geometry, *result.flow, random_angles<float>(inst.geometry, 4));
    EXPECT_LT(isometry_defect(simulate_postselected(pattern)), 1e-4f);
}

// Post-selection commutes across qubits, so the map ignores measurement order.
TEST(simulate, schedule_order_does_not_matter) {
    auto inst = generate_extremal(ExtremalPartition({2, 2, 3}));
    auto angles = random_angles<double>(inst.geometry, 8);
    std::vector<Vertex> schedule = inst.geometry.non_outputs();
    auto reference = simulate_postselected<double>(inst.geometry, angles, schedule);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(schedule.begin(), schedule.end(), rng);
        auto v = simulate_postselected<double>(inst.geometry, angles, schedule);
        ASSERT_LT((v - reference).cwiseAbs().maxCoeff(), 1e-13);
    }
}

// Without a flow the post-selected map is not an isometry for generic angles.
TEST(simulate, six_cycle_breaks_isometry) {
    Geometry g = six_cycle();
    const std::vector<Vertex> schedule{0, 1, 2};
    int broken = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto v = simulate_postselected<double>(g, random_angles<double>(g, seed), schedule);
        try {
            broken += isometry_defect(v) > 1e-3;
        } catch (const SimulationError&) {
            ++broken;
        }
    }
    EXPECT_EQ(broken, 20);
}

TEST(simulate, rejects_bad_schedules) {
    Geometry g = make(3, {{0, 1}, {1, 2}}, {0}, {2});
    AngleMap<double> angles{{0, 0.1}, {1, 0.2}};
    EXPECT_THROW(simulate_postselected<double>(g, angles, std::vector<Vertex>{0}), SimulationError);
    EXPECT_THROW(simulate_postselected<double>(g, angles, std::vector<Vertex>{0, 0}), SimulationError);
    EXPECT_THROW(simulate_postselected<double>(g, angles, std::vector<Vertex>{0, 2}), SimulationError);
    EXPECT_THROW(simulate_postselected<double>(g, angles, std::vector<Vertex>{0, 1}, 2), SimulationError);
    EXPECT_NO_THROW(simulate_postselected<double>(g, angles, std::vector<Vertex>{1, 0}));
}

TEST(measurement_pattern, validates_flow_and_angles) {
    Geometry g = make(3, {{0, 1}, {1, 2}}, {0}, {2});
    SuccessorFunction f(3);
    f.assign(0, 1);
    f.assign(1, 2);
    CausalFlow flow{f, {0, 1, 2}};
    EXPECT_NO_THROW(MeasurementPattern<double>(g, flow, {{0, 0.0}, {1, 1.0}}));
    EXPECT_THROW(MeasurementPattern<double>(g, flow, {{0, 0.0}}), SimulationError);
    EXPECT_THROW(MeasurementPattern<double>(g, flow, {{0, 0.0}, {2, 1.0}}), SimulationError);
    CausalFlow backwards{f, {2, 1, 0}};
    EXPECT_THROW(MeasurementPattern<double>(g, backwards, {{0, 0.0}, {1, 1.0}}), SimulationError);
}

TEST(measurement_order, by_rank_then_id) {
    Geometry g = make(3, {{0, 1}, {1, 2}}, {0}, {2});
    SuccessorFunction f(3);
    f.assign(0, 1);
    f.assign(1, 2);
    EXPECT_EQ(measurement_order(CausalFlow{f, {0, 1, 2}}), (std::vector<Vertex>{0, 1}));
    // Two independent single-edge patterns with tied ranks.
    SuccessorFunction pair(4);
    pair.assign(2, 3);
    pair.assign(0, 1);
    EXPECT_EQ(measurement_order(CausalFlow{pair, {0, 1, 0, 1}}), (std::vector<Vertex>{0, 2}));
}

TEST(measurement_order, independent_of_angles) {
    auto inst = generate_extremal(ExtremalPartition({3, 4}));
    auto result = find_causal_flow(inst.geometry);
    ASSERT_TRUE(result.flow);
    MeasurementPattern<double> a(inst.geometry, *result.flow, random_angles<double>(inst.geometry, 1));
    MeasurementPattern<double> b(inst.geometry, *result.flow, random_angles<double>(inst.geometry, 2));
    EXPECT_EQ(a.schedule(), b.schedule());
    EXPECT_NE(a.angles(), b.angles());
}

TEST(random_angles, seeded_and_in_range) {
    auto inst = generate_extremal(ExtremalPartition({4, 5}));
    auto a = random_angles<double>(inst.geometry, 42);
    EXPECT_EQ(a, random_angles<double>(inst.geometry, 42));
    EXPECT_EQ(a.size(), inst.geometry.non_outputs().size());
    for (const auto& [v, theta] : a) {
        EXPECT_FALSE(inst.geometry.is_output(v));
        EXPECT_GE(theta, 0.0);
        EXPECT_LT(theta, 2 * std::numbers::pi);
    }
}

TEST(isometry_defect, examples) {
    Eigen::Matrix2cd projector;
    projector << 1, 0, 0, 0;
    EXPECT_DOUBLE_EQ(isometry_defect(projector), 1.0);
    EXPECT_THROW(isometry_defect(Eigen::Matrix2cd::Zero().eval()), SimulationError);
    Eigen::Matrix2cd scaled = Eigen::Matrix2cd::Identity() * Complex(0, 3);
    EXPECT_LT(isometry_defect(scaled), 1e-15);
}

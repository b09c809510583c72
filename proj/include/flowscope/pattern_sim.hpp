#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowscope/flow.hpp"
#include "flowscope/graph.hpp"

namespace flowscope {

class SimulationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 2^|O| x 2^|I| complex matrix. Rows index output basis states, columns
/// input basis states; in both, the lowest vertex id is the most significant
/// bit (|a> (x) |b> ordering).
template <typename Real = double>
using LinearMap = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real = double>
using AngleMap = std::map<Vertex, Real>;

/// Measured vertices ordered by ascending rank, ties by id.
std::vector<Vertex> measurement_order(const CausalFlow& flow);

/// A geometry, a flow for it, and an XY-plane angle for every measured vertex.
template <typename Real = double>
class MeasurementPattern {
  public:
    /// Throws SimulationError unless the flow verifies and `angles` is keyed
    /// by exactly the non-output vertices.
    MeasurementPattern(Geometry geometry, CausalFlow flow, AngleMap<Real> angles)
        : geometry_(std::move(geometry)), flow_(std::move(flow)), angles_(std::move(angles)) {
        if (auto check = verify_flow(geometry_, flow_); !check) {
            throw SimulationError("pattern flow is invalid: " + check.message);
        }
        const auto& measured = geometry_.non_outputs();
        if (angles_.size() != measured.size()) {
            throw SimulationError("angles must be given for exactly the non-output vertices");
        }
        for (Vertex v : measured) {
            if (!angles_.contains(v)) {
                throw SimulationError("missing angle for " + geometry_.label(v));
            }
        }
    }

    [[nodiscard]] const Geometry& geometry() const { return geometry_; }
    [[nodiscard]] const CausalFlow& flow() const { return flow_; }
    [[nodiscard]] const AngleMap<Real>& angles() const { return angles_; }
    [[nodiscard]] std::vector<Vertex> schedule() const { return measurement_order(flow_); }

  private:
    Geometry geometry_;
    CausalFlow flow_;
    AngleMap<Real> angles_;
};

/// Angles drawn uniformly from [0, 2pi) for every non-output vertex, in
/// ascending vertex order from a mt19937_64 seeded with `seed`.
template <typename Real = double>
AngleMap<Real> random_angles(const Geometry& geom, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Real> dist(Real(0), Real(2) * std::numbers::pi_v<Real>);
    AngleMap<Real> angles;
    for (Vertex v : geom.non_outputs()) {
        angles[v] = dist(rng);
    }
    return angles;
}

namespace detail {

// Contracts qubit at big-endian position `pos` of a `live`-qubit register
// with <+_theta| = (<0| + e^{-i theta} <1|) / sqrt(2).
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> project_plus(
    const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>& state, std::size_t live, std::size_t pos, Real theta) {
    const std::size_t bit = live - 1 - pos;
    const std::size_t low_mask = (std::size_t{1} << bit) - 1;
    const std::complex<Real> phase = std::polar(Real(1), -theta) / std::sqrt(Real(2));
    const Real zero_weight = Real(1) / std::sqrt(Real(2));
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> out(state.size() / 2);
    for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        const std::size_t with0 = ((i & ~low_mask) << 1) | (i & low_mask);
        const std::size_t with1 = with0 | (std::size_t{1} << bit);
        out(idx) = zero_weight * state(static_cast<Eigen::Index>(with0)) + phase * state(static_cast<Eigen::Index>(with1));
    }
    return out;
}

}  // namespace detail

/// Post-selected action of the pattern with an explicit measurement schedule:
/// prepare I^c in |+>, apply CZ along every edge, then project each scheduled
/// vertex onto |+_theta> and drop it. `schedule` must list the non-outputs
/// exactly once; it is not checked against any flow.
template <typename Real = double>
LinearMap<Real> simulate_postselected(const Geometry& geom, const AngleMap<Real>& angles,
                                      std::span<const Vertex> schedule, std::size_t max_qubits = 12) {
    using State = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
    const std::size_t n = geom.vertex_count();
    if (n > max_qubits) {
        throw SimulationError("geometry has " + std::to_string(n) + " qubits, above the simulation bound of " +
                              std::to_string(max_qubits));
    }
    std::vector<char> scheduled(n, 0);
    for (Vertex v : schedule) {
        if (v >= n || geom.is_output(v) || scheduled[v]) {
            throw SimulationError("schedule must list each non-output vertex exactly once");
        }
        if (!angles.contains(v)) {
            throw SimulationError("missing angle for " + geom.label(v));
        }
        scheduled[v] = 1;
    }
    if (schedule.size() != geom.non_outputs().size()) {
        throw SimulationError("schedule must list each non-output vertex exactly once");
    }

    const auto& inputs = geom.inputs();
    const std::size_t in_dim = std::size_t{1} << inputs.size();
    const std::size_t out_dim = std::size_t{1} << geom.output_count();
    const auto edges = geom.graph().edges();
    auto bit_of = [n](Vertex v) { return std::size_t{1} << (n - 1 - v); };
    std::size_t input_mask = 0;
    for (Vertex v : inputs) {
        input_mask |= bit_of(v);
    }
    const Real prep = std::pow(Real(2), -Real(geom.non_inputs().size()) / 2);

    LinearMap<Real> map(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(in_dim));
    for (std::size_t col = 0; col < in_dim; ++col) {
        std::size_t fixed = 0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if ((col >> (inputs.size() - 1 - i)) & 1U) {
                fixed |= bit_of(inputs[i]);
            }
        }
        State state = State::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
        for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
            if ((x & input_mask) != fixed) {
                continue;
            }
            bool negate = false;
            for (const auto& [u, v] : edges) {
                negate ^= (x & bit_of(u)) && (x & bit_of(v));
            }
            state(static_cast<Eigen::Index>(x)) = negate ? -prep : prep;
        }
        std::vector<Vertex> live(n);
        for (Vertex v = 0; v < n; ++v) {
            live[v] = v;
        }
        for (Vertex v : schedule) {
            const auto it = std::find(live.begin(), live.end(), v);
            const auto pos = static_cast<std::size_t>(it - live.begin());
            state = detail::project_plus<Real>(state, live.size(), pos, angles.at(v));
            live.erase(it);
        }
        map.col(static_cast<Eigen::Index>(col)) = state;
    }
    return map;
}

/// Post-selected map of a pattern measured in its flow's schedule.
template <typename Real = double>
LinearMap<Real> simulate_postselected(const MeasurementPattern<Real>& pattern, std::size_t max_qubits = 12) {
    const auto schedule = pattern.schedule();
    return simulate_postselected<Real>(pattern.geometry(), pattern.angles(), schedule, max_qubits);
}

/// Max-norm distance of V^dagger V, rescaled to trace 2^|I|, from the
/// identity. Zero iff V is proportional to an isometry. Throws
/// SimulationError when V is numerically zero (Frobenius norm below 1e-12).
template <typename Derived>
typename Derived::RealScalar isometry_defect(const Eigen::MatrixBase<Derived>& v) {
    using Real = typename Derived::RealScalar;
    const auto gram = (v.adjoint() * v).eval();
    const Real trace = gram.trace().real();
    if (!(std::sqrt(trace) >= Real(1e-12))) {
        throw SimulationError("post-selected map is zero");
    }
    const Real scale = Real(gram.rows()) / trace;
    using Gram = std::decay_t<decltype(gram)>;
    return (gram * scale - Gram::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace flowscope

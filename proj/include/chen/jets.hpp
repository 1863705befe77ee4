#pragma once

// Finite-difference jets (value, first and second partials) of parametric
// maps into C^m. Second partials of a coordinate pair realise the flat
// connection D on coordinate fields.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "chen/core_geometry.hpp"

namespace chen {

/// Domain point; entries beyond the map's domain dimension are ignored.
using Coords = std::array<double, 3>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

struct ParametricMap {
    std::size_t domain_dim = 0;
    std::size_t codomain_dim = 0;
    /// Must be pure and reentrant.
    std::function<AmbientVector(const Coords&)> evaluator;
    std::vector<Interval> domain_box;

    AmbientVector operator()(const Coords& p) const { return evaluator(p); }
};

struct JetConfig {
    double first_step = 1e-3;
    double second_step = std::pow(10.0, -2.5);
    /// Combine steps h and 2h for the second partials.
    bool richardson = true;

    /// Distance the stencil reaches from the base point.
    double stencil_radius() const noexcept;
};

struct JetPoint {
    Coords point{};
    std::size_t domain_dim = 0;
    AmbientVector value;
    std::array<AmbientVector, 3> first;
    /// Symmetric: second[a][b] and second[b][a] are the same stored value.
    std::array<std::array<AmbientVector, 3>, 3> second;
    double first_step = 0.0;
    double second_step = 0.0;
};

/// Throws BoundaryError when the stencil leaves the domain box.
JetPoint jet_at(const ParametricMap& map, const Coords& point, const JetConfig& config = {});

/// dE(X) = sum_a X^a d_a E
AmbientVector pushforward(const JetPoint& jet, const Coords& X);

/// sum_{a,b} X^a Y^b d_a d_b E
AmbientVector second_directional(const JetPoint& jet, const Coords& X, const Coords& Y);

/// Points at fractions (i+1)/(n+1) of each box edge. `counts` has one entry
/// per domain coordinate; the last coordinate varies fastest.
std::vector<Coords> interior_grid(const std::vector<Interval>& box,
                                  const std::vector<std::size_t>& counts);

}  // namespace chen

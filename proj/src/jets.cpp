#include "chen/jets.hpp"

#include <algorithm>
#include <sstream>

#include "chen/errors.hpp"

namespace chen {

double JetConfig::stencil_radius() const noexcept {
    return std::max(2.0 * first_step, richardson ? 2.0 * second_step : second_step);
}

namespace {

Coords shifted(const Coords& p, std::size_t a, double da, std::size_t b = 0, double db = 0.0) {
    Coords q = p;
    q[a] += da;
    q[b] += db;
    return q;
}

// O(h^4) central first derivative.
AmbientVector first_partial(const ParametricMap& map, const Coords& p, std::size_t a, double h) {
    const AmbientVector fp1 = map(shifted(p, a, h));
    const AmbientVector fm1 = map(shifted(p, a, -h));
    const AmbientVector fp2 = map(shifted(p, a, 2 * h));
    const AmbientVector fm2 = map(shifted(p, a, -2 * h));
    return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
}

// O(h^2) central second derivatives.
AmbientVector pure_second(const ParametricMap& map, const Coords& p, std::size_t a, double h,
                          const AmbientVector& f0) {
    return (map(shifted(p, a, h)) - 2.0 * f0 + map(shifted(p, a, -h))) / (h * h);
}

AmbientVector mixed_second(const ParametricMap& map, const Coords& p, std::size_t a, std::size_t b,
                           double h) {
    const AmbientVector pp = map(shifted(p, a, h, b, h));
    const AmbientVector pm = map(shifted(p, a, h, b, -h));
    const AmbientVector mp = map(shifted(p, a, -h, b, h));
    const AmbientVector mm = map(shifted(p, a, -h, b, -h));
    return ((pp - pm) - (mp - mm)) / (4.0 * h * h);
}

}  // namespace

JetPoint jet_at(const ParametricMap& map, const Coords& point, const JetConfig& config) {
    const std::size_t n = map.domain_dim;
    if (n < 1 || n > 3 || map.domain_box.size() != n) {
        throw Error(ErrorKind::Usage, "jet_at: map must have domain dimension 1..3 with a box");
    }
    if (!(config.first_step > 0.0) || !(config.second_step > 0.0)) {
        throw Error(ErrorKind::Usage, "jet_at: steps must be positive");
    }
    const double radius = config.stencil_radius();
    for (std::size_t a = 0; a < n; ++a) {
        const Interval& box = map.domain_box[a];
        if (point[a] - radius < box.lo || point[a] + radius > box.hi) {
            std::ostringstream msg;
            msg << "jet_at: coordinate " << a << " = " << point[a]
                << " is closer than the stencil margin " << radius << " to the box ["
                << box.lo << ", " << box.hi << "]";
            throw BoundaryError(radius, msg.str());
        }
    }

    JetPoint jet;
    jet.point = point;
    jet.domain_dim = n;
    jet.first_step = config.first_step;
    jet.second_step = config.second_step;
    jet.value = map(point);
    const std::size_t m = jet.value.dim();
    for (auto& f : jet.first) f = AmbientVector::zero(m);
    for (auto& row : jet.second)
        for (auto& s : row) s = AmbientVector::zero(m);

    const double h1 = config.first_step;
    const double h2 = config.second_step;
    for (std::size_t a = 0; a < n; ++a) jet.first[a] = first_partial(map, point, a, h1);

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            auto estimate = [&](double h) {
                return a == b ? pure_second(map, point, a, h, jet.value)
                              : mixed_second(map, point, a, b, h);
            };
            AmbientVector d = estimate(h2);
            if (config.richardson) d = (4.0 * d - estimate(2.0 * h2)) / 3.0;
            jet.second[a][b] = d;
            jet.second[b][a] = d;
        }
    }
    return jet;
}

AmbientVector pushforward(const JetPoint& jet, const Coords& X) {
    AmbientVector out = AmbientVector::zero(jet.value.dim());
    for (std::size_t a = 0; a < jet.domain_dim; ++a) out += X[a] * jet.first[a];
    return out;
}

AmbientVector second_directional(const JetPoint& jet, const Coords& X, const Coords& Y) {
    AmbientVector out = AmbientVector::zero(jet.value.dim());
    for (std::size_t a = 0; a < jet.domain_dim; ++a) {
        for (std::size_t b = 0; b < jet.domain_dim; ++b) {
            out += (X[a] * Y[b]) * jet.second[a][b];
        }
    }
    return out;
}

std::vector<Coords> interior_grid(const std::vector<Interval>& box,
                                  const std::vector<std::size_t>& counts) {
    if (box.size() != counts.size() || box.empty() || box.size() > 3) {
        throw Error(ErrorKind::Usage, "interior_grid: one count per box coordinate required");
    }
    std::vector<Coords> points{Coords{}};
    for (std::size_t a = 0; a < box.size(); ++a) {
        if (counts[a] == 0) throw Error(ErrorKind::Usage, "interior_grid: counts must be >= 1");
        std::vector<Coords> next;
        next.reserve(points.size() * counts[a]);
        for (const auto& p : points) {
            for (std::size_t i = 0; i < counts[a]; ++i) {
                Coords q = p;
                const double frac = double(i + 1) / double(counts[a] + 1);
                q[a] = box[a].lo + frac * box[a].width();
                next.push_back(q);
            }
        }
        points = std::move(next);
    }
    return points;
}

}  // namespace chen

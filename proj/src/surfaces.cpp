#include "chen/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chen/errors.hpp"

namespace chen {

using std::numbers::pi;

namespace {

Complex cis(double x) { return std::polar(1.0, x); }

HorizontalSurface make_surface(std::string label, std::vector<Interval> box,
                               std::function<AmbientVector(const Coords&)> f) {
    HorizontalSurface s;
    s.label = std::move(label);
    s.map.domain_dim = 2;
    s.map.codomain_dim = 3;
    s.map.domain_box = std::move(box);
    s.map.evaluator = std::move(f);
    return s;
}

struct MetricData {
    double g[2][2];
    double det;
};

MetricData induced_metric(const JetPoint& jet) {
    MetricData m{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m.g[a][b] = real_inner(jet.first[a], jet.first[b]);
    m.det = m.g[0][0] * m.g[1][1] - m.g[0][1] * m.g[1][0];
    return m;
}

}  // namespace

HorizontalSurface clifford_surface() {
    return make_surface("clifford", {{0.0, 2 * pi}, {0.0, 2 * pi}}, [](const Coords& p) {
        const double s = 1.0 / std::sqrt(3.0);
        return AmbientVector{s * cis(p[0]), s * cis(p[1]), s * cis(-(p[0] + p[1]))};
    });
}

HorizontalSurface geodesic_sphere_surface() {
    return make_surface("geodesic_sphere", {{-pi / 3, pi / 3}, {0.0, 2 * pi}}, [](const Coords& p) {
        const double cu = std::cos(p[0]);
        return AmbientVector{cu * std::cos(p[1]), cu * std::sin(p[1]), std::sin(p[0])};
    });
}

HorizontalSurface tilted_control_surface() {
    const HorizontalSurface base = geodesic_sphere_surface();
    return make_surface("tilted_control", base.map.domain_box, [base](const Coords& p) {
        return cis(p[0]) * base.map(p);
    });
}

HorizontalSurface latitude_control_surface(double rho) {
    return make_surface("latitude_control", {{-pi / 3, pi / 3}, {0.0, 2 * pi}},
                        [rho](const Coords& p) {
                            const double sr = std::sin(rho);
                            return AmbientVector{Complex(std::cos(rho), 0.0),
                                                 sr * std::cos(p[0]) * cis(p[1]),
                                                 Complex(sr * std::sin(p[0]), 0.0)};
                        });
}

HorizontalityResidual horizontality_residual(const HorizontalSurface& surface, const Coords& point,
                                             const JetConfig& config) {
    const JetPoint jet = jet_at(surface.map, point, config);
    const AmbientVector iw = jet.value.J();
    HorizontalityResidual r;
    for (std::size_t a = 0; a < 2; ++a) {
        r.horizontality = std::max(r.horizontality, std::abs(real_inner(jet.first[a], iw)));
    }
    r.unit_norm = std::abs(jet.value.norm_sq() - 1.0);
    return r;
}

double surface_mean_curvature_norm(const HorizontalSurface& surface, const Coords& point,
                                   const JetConfig& config) {
    const JetPoint jet = jet_at(surface.map, point, config);
    const MetricData m = induced_metric(jet);
    if (!(m.det >= 1e-8)) {
        throw Error(ErrorKind::ImmersionFailure, "surface_mean_curvature_norm: induced metric "
                                                 "is degenerate (det g below 1e-8)");
    }
    const double ginv[2][2] = {{m.g[1][1] / m.det, -m.g[0][1] / m.det},
                               {-m.g[1][0] / m.det, m.g[0][0] / m.det}};

    // Normal space of the surface inside S^5: orthogonal to W, W_u, W_v.
    const std::vector<AmbientVector> span = {jet.value, jet.first[0], jet.first[1]};
    const OrthonormalFrame tangent_and_radial = gram_schmidt(span);

    AmbientVector mean = AmbientVector::zero(3);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            mean += ginv[a][b] * project_orthogonal(jet.second[a][b], tangent_and_radial);
        }
    }
    return mean.norm();
}

double horizontal_nondegeneracy(const HorizontalSurface& surface, const Coords& point,
                                const JetConfig& config) {
    const JetPoint jet = jet_at(surface.map, point, config);
    const std::vector<AmbientVector> six = {jet.value,     jet.first[0],     jet.first[1],
                                            jet.value.J(), jet.first[0].J(), jet.first[1].J()};
    return real_gram_determinant(six);
}

SurfaceCheckSummary check_surface(const HorizontalSurface& surface, std::size_t n,
                                  const JetConfig& config) {
    SurfaceCheckSummary out;
    out.min_metric_det = std::numeric_limits<double>::infinity();
    out.min_nondegeneracy = std::numeric_limits<double>::infinity();
    for (const Coords& p : interior_grid(surface.domain_box(), {n, n})) {
        const HorizontalityResidual h = horizontality_residual(surface, p, config);
        out.max_horizontality = std::max(out.max_horizontality, h.horizontality);
        out.max_unit_norm = std::max(out.max_unit_norm, h.unit_norm);
        out.max_mean_curvature =
            std::max(out.max_mean_curvature, surface_mean_curvature_norm(surface, p, config));
        const JetPoint jet = jet_at(surface.map, p, config);
        out.min_metric_det = std::min(out.min_metric_det, induced_metric(jet).det);
        out.min_nondegeneracy =
            std::min(out.min_nondegeneracy, horizontal_nondegeneracy(surface, p, config));
        ++out.points;
    }
    return out;
}

}  // namespace chen

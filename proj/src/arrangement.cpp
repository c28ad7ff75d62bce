#include "sightcone/arrangement.hpp"

#include "sightcone/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sightcone {

namespace {

/// Van der Corput radical inverse in base 2, in (0, 1).
double radical_inverse(std::uint64_t k) {
    double v = 0.0, scale = 0.5;
    for (; k; k >>= 1, scale *= 0.5)
        if (k & 1) v += scale;
    return v;
}

double fract(double x) { return x - std::floor(x); }

} // namespace

std::string sign_string(const SignVector& s) {
    std::string out;
    out.reserve(s.size());
    for (auto v : s) out.push_back(v > 0 ? '+' : '-');
    return out;
}

Vec hyperspherical_point(const std::vector<double>& angles, double r) {
    if (r <= 0.0) throw DegenerateInput("hyperspherical_point: nonpositive radius");
    if (angles.empty())
        throw DegenerateInput("hyperspherical_point: need at least one angle");
    const int d = static_cast<int>(angles.size()) + 1;
    const double pi = std::acos(-1.0);
    for (int i = 0; i < d - 2; ++i)
        if (angles[i] < 0.0 || angles[i] > pi)
            throw AngleOutOfRange("hyperspherical_point: leading angle outside [0, pi]");
    if (angles[d - 2] < 0.0 || angles[d - 2] > 2.0 * pi)
        throw AngleOutOfRange("hyperspherical_point: last angle outside [0, 2 pi]");

    Vec x(d);
    double prod = r;
    for (int i = 0; i < d - 1; ++i) {
        x[i] = prod * std::cos(angles[i]);
        prod *= std::sin(angles[i]);
    }
    x[d - 1] = prod;
    return x;
}

SignVector sign_vector(const Vec& z, const std::vector<Hyperplane>& planes,
                       double eps) {
    SignVector out;
    out.reserve(planes.size());
    for (const auto& pl : planes) {
        if (pl.normal.size() != z.size())
            throw DegenerateInput("sign_vector: dimension mismatch");
        double e = pl.eval(z);
        if (std::abs(e) <= eps)
            throw OnPlane("sign_vector: point within eps of a facet plane");
        out.push_back(e > 0 ? 1 : -1);
    }
    return out;
}

SignVector sign_vector(const Vec& z, const std::vector<Hyperplane>& planes,
                       const Tolerance& tol) {
    return sign_vector(z, planes, tol.len_eps(std::max(1.0, z.norm())));
}

std::vector<Hyperplane> scene_planes(const Scene& scene) {
    std::vector<Hyperplane> planes;
    for (const auto& P : scene.polytopes)
        for (const auto& f : P.facets) planes.push_back(f.plane);
    return planes;
}

std::vector<Vec> sphere_samples(int n, int dim, double r, std::uint64_t seed) {
    if (n < 0) throw DegenerateInput("sphere_samples: negative count");
    if (dim < 2) throw DegenerateInput("sphere_samples: dimension below two");
    if (r <= 0.0) throw DegenerateInput("sphere_samples: nonpositive radius");
    std::vector<Vec> pts;
    pts.reserve(n);
    if (dim == 3) {
        const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
        const double two_pi = 2.0 * std::acos(-1.0);
        std::uint64_t state = seed;
        const double off_phi = splitmix64(state) / 1.8446744073709552e19;
        const double off_c = splitmix64(state) / 1.8446744073709552e19;
        for (int k = 0; k < n; ++k) {
            double phi = two_pi * fract(off_phi + golden * k);
            double c = 2.0 * fract(off_c + radical_inverse(k + 1)) - 1.0;
            double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            Vec p(3);
            p << r * s * std::cos(phi), r * s * std::sin(phi), r * c;
            pts.push_back(p);
        }
    } else {
        auto rng = make_rng(seed, 104729);
        for (int k = 0; k < n; ++k) pts.push_back(r * random_unit_vector(rng, dim));
    }
    return pts;
}

std::vector<RegionReport> sample_regions(const Scene& scene, int n_samples,
                                         std::uint64_t seed,
                                         const Tolerance& tol) {
    if (n_samples < 1) throw DegenerateInput("sample_regions: need samples");
    (void)tol;
    const auto planes = scene_planes(scene);
    const int dim = scene.polytopes.empty()
                        ? 3
                        : scene.polytopes.front().dim;
    const double guard = 1e-7 * scene.r;

    std::vector<RegionReport> reports;
    std::map<SignVector, int> index;
    for (const Vec& z : sphere_samples(n_samples, dim, scene.r, seed)) {
        SignVector sv;
        try {
            sv = sign_vector(z, planes, guard);
        } catch (const OnPlane&) {
            continue;
        }
        auto [it, fresh] = index.try_emplace(sv, static_cast<int>(reports.size()));
        if (fresh) reports.push_back(RegionReport{sv, z, 1, std::nullopt});
        else ++reports[it->second].sample_count;
    }
    return reports;
}

} // namespace sightcone

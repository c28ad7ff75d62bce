#ifndef SIGHTCONE_RNG_HPP
#define SIGHTCONE_RNG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace sightcone {

/// splitmix64 step; used to derive independent streams from one seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic generator for (seed, stream); distinct streams are
/// statistically independent, so parallel evaluation keeps results stable.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform direction on the unit sphere in dimension d.
inline Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(d);
    double n2 = 0.0;
    do {
        for (int i = 0; i < d; ++i) v[i] = gauss(rng);
        n2 = v.squaredNorm();
    } while (n2 < 1e-12);
    return v / std::sqrt(n2);
}

/// Uniform point in the ball of the given radius.
inline Eigen::VectorXd random_in_ball(std::mt19937_64& rng, int d, double radius) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd dir = random_unit_vector(rng, d);
    double u = unif(rng);
    return dir * (radius * std::pow(u, 1.0 / d));
}

/// Random rotation (det +1) from the QR decomposition of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i)
        if (R(i, i) < 0) Q.col(i) = -Q.col(i);
    if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
    return Q;
}

} // namespace sightcone

#endif

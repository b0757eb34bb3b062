#include "bglab/rng.hpp"

#include <cmath>
#include <numbers>

namespace bglab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t salt) { return Rng(mix_seed(seed, salt)); }

cplx random_phase(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const double t = u(rng);
    return {std::cos(t), std::sin(t)};
}

CMatrix random_ginibre(std::size_t dim, Rng& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

CMatrix random_haar_unitary(std::size_t dim, Rng& rng) {
    // Modified Gram-Schmidt on a Ginibre draw. Forcing the R diagonal
    // positive makes the QR factor unique, hence exactly Haar.
    CMatrix g = random_ginibre(dim, rng);
    CMatrix q(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<cplx> col(dim);
        for (std::size_t r = 0; r < dim; ++r) col[r] = g(r, c);
        for (std::size_t prev = 0; prev < c; ++prev) {
            cplx dot = 0.0;
            for (std::size_t r = 0; r < dim; ++r) dot += std::conj(q(r, prev)) * col[r];
            for (std::size_t r = 0; r < dim; ++r) col[r] -= dot * q(r, prev);
        }
        double norm2 = 0.0;
        for (const auto& v : col) norm2 += std::norm(v);
        double norm = std::sqrt(norm2);
        if (norm < 1e-12) {
            // Degenerate draw; retry the column with fresh randomness.
            std::normal_distribution<double> gg(0.0, std::sqrt(0.5));
            for (std::size_t r = 0; r < dim; ++r) g(r, c) = cplx(gg(rng), gg(rng));
            c -= 1;
            continue;
        }
        for (std::size_t r = 0; r < dim; ++r) q(r, c) = col[r] / norm;
    }
    return q;
}

CMatrix random_hermitian(std::size_t dim, Rng& rng) {
    CMatrix g = random_ginibre(dim, rng);
    CMatrix h = g.adjoint();
    h += g;
    h *= 0.5;
    return h;
}

CMatrix random_projection(std::size_t dim, Rng& rng) {
    CMatrix h = random_hermitian(dim, rng);
    return support_pos(HermitianMatrix(std::move(h)), 0.0).matrix();
}

}  // namespace bglab

// Times the OpenMP matrix kernel against the serial reference, plus the
// two hot consumers (eigendecomposition, trace evaluation).

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bglab/amalgam.hpp"
#include "bglab/approx_rep.hpp"
#include "bglab/linalg.hpp"
#include "bglab/rng.hpp"

using namespace bglab;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    // one warmup, then best of reps
    fn();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial[ms]", "parallel[ms]", "speedup");
    auto rng = make_rng(1);
    for (std::size_t dim : {96u, 192u, 384u}) {
        CMatrix x = random_ginibre(dim, rng);
        CMatrix y = random_ginibre(dim, rng);
        volatile double sink = 0.0;
        const double ts = time_of([&] { sink = sink + matmul_serial(x, y)(0, 0).real(); }, 3);
        const double tp = time_of([&] { sink = sink + matmul_parallel(x, y)(0, 0).real(); }, 3);
        char label[64];
        std::snprintf(label, sizeof label, "matmul %zux%zu", dim, dim);
        std::printf("%-28s %12.2f %12.2f %8.2f\n", label, ts * 1e3, tp * 1e3, ts / tp);
    }

    {
        CMatrix h = random_hermitian(128, rng);
        const double te = time_of([&] { (void)eig_hermitian(h); }, 3);
        std::printf("%-28s %12.2f %12s %8s\n", "eig_hermitian 128", te * 1e3, "-", "-");
    }

    {
        const ApproxRep rep = build_rep(8);
        const AmalgamEvaluator ev(rep);
        const GroupWord w = GroupWord::parse("a b^2 a^-1 b a b^4 a^-1 b^-2");
        const double tt = time_of([&] { (void)ev.tau(ab_instantiate(w, rep)); }, 3);
        std::printf("%-28s %12.2f %12s %8s\n", "amalgam tau (n=8, len 8)", tt * 1e3, "-", "-");

        McConfig cfg;
        cfg.samples = 32;
        cfg.aux_dim = 16;
        cfg.probes = 8;
        const double tm = time_of([&] { (void)mc_trace(w, rep, cfg); }, 2);
        std::printf("%-28s %12s %12.2f %8s\n", "mc_trace 32 samples", "-", tm * 1e3, "-");
    }
    return 0;
}

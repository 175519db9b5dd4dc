// Benchmark: serial reference vs OpenMP batch verification on the
// example2 preset. Also cross-checks that both paths produce identical
// certificates.

#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "cft/measure.hpp"
#include "cft/presets.hpp"

namespace {

double now_seconds() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
#endif
}

}  // namespace

int main(int argc, char** argv) {
    long count = 20000;
    long height_log2 = 20;
    unsigned long long seed = 7;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        if (key == "--count")
            count = std::stol(argv[i + 1]);
        else if (key == "--height-log2")
            height_log2 = std::stol(argv[i + 1]);
        else if (key == "--seed")
            seed = std::stoull(argv[i + 1]);
        else {
            std::fprintf(stderr, "usage: %s [--count N] [--height-log2 B] [--seed S]\n", argv[0]);
            return 2;
        }
    }

    const cft::SequencePair sp = cft::preset_example2(8);
    const mpz_class H = cft::pow_z(2, static_cast<unsigned long>(height_log2));
    const std::vector<cft::BoundVariant> variants = {cft::BoundVariant::Standard,
                                                     cft::BoundVariant::Strong};

    std::printf("sampling %ld polynomials (d=2, H=2^%ld, seed=%llu)...\n", count, height_log2, seed);
    const auto polys = cft::sample_polynomials(2, H, count, seed);

    double t0 = now_seconds();
    const auto serial = cft::verify_batch_serial(polys, sp.a, sp.b, 1, variants);
    double t_serial = now_seconds() - t0;

    t0 = now_seconds();
    const auto parallel = cft::verify_batch_parallel(polys, sp.a, sp.b, 1, variants);
    double t_parallel = now_seconds() - t0;

    if (serial.certificates != parallel.certificates) {
        std::fprintf(stderr, "FAIL: serial and parallel certificates differ\n");
        return 1;
    }

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp single
    threads = omp_get_num_threads();
#endif
    std::printf("certificates:       %zu (%ld holds, %ld violated, %ld indeterminate)\n",
                serial.certificates.size(), serial.count(cft::Verdict::Holds),
                serial.count(cft::Verdict::Violated), serial.count(cft::Verdict::Indeterminate));
    std::printf("serial reference:   %8.3f s\n", t_serial);
    std::printf("openmp (%2d threads): %8.3f s\n", threads, t_parallel);
    std::printf("speedup:            %8.2fx\n", t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("results identical:  yes\n");
    return 0;
}

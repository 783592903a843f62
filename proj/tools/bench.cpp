// Benchmark comparing the OpenMP kernel paths against their serial
// references. Each pair must agree exactly; timings are informational.
#include <chrono>
#include <cstdio>
#include <string>

#include "refute/cem.hpp"
#include "refute/graph.hpp"
#include "refute/linalg.hpp"
#include "refute/rewards.hpp"
#include "refute/rng.hpp"
#include "refute/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace refute;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%-5.2f %s\n", name.c_str(), serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, match ? "outputs match" : "OUTPUT MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths run serially\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        // random dense-ish 0/1 matrix, n = 22
        const int n = 22;
        Rng rng(7);
        linalg::IntMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = rng.next_double() < 0.4 ? 1 : 0;
        BigInt a, b;
        const double ts = time_ms([&] { a = linalg::permanent_serial(m); });
        const double tp = time_ms([&] { b = linalg::permanent(m); });
        row("ryser permanent (n=22)", ts, tp, a == b);
    }
    {
        auto g = graph::build_comet(13, 600);
        std::vector<std::vector<int>> a, b;
        const double ts = time_ms([&] { a = graph::all_pairs_distances(g, false); });
        const double tp = time_ms([&] { b = graph::all_pairs_distances(g, true); });
        row("bfs distances (n=613)", ts, tp, a == b);
    }
    {
        auto space = encoding::ConstructionSpace::graph_edges(19);
        auto reward = rewards::make_score_fn("lambda-mu", 19);
        cem::CemConfig cfg;
        cfg.batch_size = 400;
        cfg.max_iterations = 2;
        cfg.rng_seed = 11;
        std::vector<double> a, b;
        cfg.workers = 1;
        const double ts = time_ms([&] {
            auto r = cem::run(cfg, space, reward.evaluate);
            for (auto& s : r.stats) a.push_back(s.best_reward);
        });
        cfg.workers = 0;
        const double tp = time_ms([&] {
            auto r = cem::run(cfg, space, reward.evaluate);
            for (auto& s : r.stats) b.push_back(s.best_reward);
        });
        row("cem iteration (n=19)", ts, tp, a == b);
    }
    {
        BigInt v;
        const double tp = time_ms([&] { v = verify::f312_oracle(6).value; });
        std::printf("%-28s %13s %10.1f ms   f_312(6) = %s\n", "f312 oracle (n=6)", "-", tp,
                    v.get_str().c_str());
    }
    return 0;
}

// Kernels against the serial reference on one large stream.
//
//   estf_bench [--events N] [--reps R] [--threads T]
//
// Prints the median wall time per op for the reference, the kernel on one
// thread, and the kernel on T threads (default: all), checking that all
// three agree.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "estf/estf.hpp"
#include "reference/reference.hpp"
#include "support.hpp"

using namespace estf;

namespace {

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

template <class Fn>
double median_seconds(int reps, Fn&& fn) {
    std::vector<double> t;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel vs reference timings"};
    std::size_t events = 1'000'000;
    int reps = 3;
    int threads = 0;
    app.add_option("--events", events, "stream length");
    app.add_option("--reps", reps, "timed runs per cell")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "threads for the parallel column (0: all)");
    CLI11_PARSE(app, argc, argv);
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    threads = 1;
#endif

    const auto s = testing::dense_stream(events, 1);
    const FragmentSpec frag = select_fragment(s.size(), 0.5, 0.25);
    const EstfConfig config{0.25, 0.25, Domain::Polarity, Domain::Time, 0.1, 7};
    const DropParams drop{DropStrategy::Random, 0.2};

    struct Row {
        const char* name;
        std::function<EventStream()> kernel, reference;
    };
    const std::vector<Row> rows{
        {"istp time", [&] { return istp(s, frag, Domain::Time); }, [&] { return ref::istp(s, frag, Domain::Time); }},
        {"istp polarity", [&] { return istp(s, frag, Domain::Polarity); },
         [&] { return ref::istp(s, frag, Domain::Polarity); }},
        {"dst time", [&] { return dst(s, frag, {Domain::Time, 0.1, 12345}); },
         [&] { return ref::dst(s, frag, Domain::Time, 12345); }},
        {"dst x", [&] { return dst(s, frag, {Domain::X, 0.1, -30}); }, [&] { return ref::dst(s, frag, Domain::X, -30); }},
        {"estf", [&] { return estf::estf(s, config); }, [&] { return ref::estf(s, config); }},
        {"event_drop", [&] {
             Rng rng(3);
             return event_drop(s, drop, rng);
         },
         [&] { return ref::event_drop(s, drop, 3); }},
        {"translate", [&] { return translate(s, 5, -5); }, [&] { return ref::translate(s, 5, -5); }},
    };

    std::printf("%zu events, %d reps, parallel column uses %d threads\n", s.size(), reps, threads);
    std::printf("%-14s %12s %12s %12s %10s %10s  %s\n", "op", "ref [ms]", "1 thr [ms]", "N thr [ms]", "ref/1thr",
                "1thr/Nthr", "agree");
    bool all_agree = true;
    for (const auto& row : rows) {
        set_threads(1);
        const auto serial = row.kernel();
        const bool agree = serial == row.reference();
        set_threads(threads);
        const bool parallel_agree = row.kernel() == serial;
        all_agree = all_agree && agree && parallel_agree;

        const double t_ref = median_seconds(reps, row.reference);
        set_threads(1);
        const double t_one = median_seconds(reps, row.kernel);
        set_threads(threads);
        const double t_par = median_seconds(reps, row.kernel);
        std::printf("%-14s %12.2f %12.2f %12.2f %10.1f %10.2f  %s\n", row.name, 1e3 * t_ref, 1e3 * t_one, 1e3 * t_par,
                    t_ref / t_one, t_one / t_par, agree && parallel_agree ? "yes" : "NO");
    }

    auto grid_kernel = [&] { return accumulate(s, 10); };
    set_threads(1);
    const bool grid_agree = grid_kernel() == ref::accumulate(s, 10);
    all_agree = all_agree && grid_agree;
    const double g_ref = median_seconds(reps, [&] { return ref::accumulate(s, 10); });
    const double g_one = median_seconds(reps, grid_kernel);
    set_threads(threads);
    const double g_par = median_seconds(reps, grid_kernel);
    std::printf("%-14s %12.2f %12.2f %12.2f %10.1f %10.2f  %s\n", "accumulate", 1e3 * g_ref, 1e3 * g_one, 1e3 * g_par,
                g_ref / g_one, g_one / g_par, grid_agree ? "yes" : "NO");
    return all_agree ? 0 : 1;
}

#pragma once

// Sweeps over the transfer distance and comparison of measured exponents
// with the free-particle Lieb-Robinson table.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "longwalk/series.hpp"

namespace longwalk {

namespace tolerance {
inline constexpr double kChainSlope = 0.03;
inline constexpr double kConvergence = 0.01;
inline constexpr double kLogR2 = 0.999;
inline constexpr double kRingExtrapolation = 0.1;
inline constexpr double kSpectralSlope = 0.05;
inline constexpr double kRingTime = 0.05;
inline constexpr double kUniformSlope = 1e-6;
}  // namespace tolerance

enum class Regime { Uniform, Constant, Logarithmic, PowerLaw, NearestNeighbour };

const char* regime_name(Regime regime);

struct LRExponent {
    Regime regime = Regime::Constant;
    double exponent = 0.0;        // optimal T ~ L^exponent (0 for the log regime)
    double bound_exponent = 0.0;  // exponent on the bound side of the table
    bool logarithmic = false;
};

LRExponent lr_exponent(int dimension, double alpha);

/// T ~ L^x for the ring protocol: d = 1 piecewise table, d = 2 alpha - d/2.
double ring_time_exponent(int dimension, double alpha);

/// Q(l) on the even grid l_min..l_max; guard rejections become warnings.
ScalingSeries q_scaling_sweep(int dimension, double alpha, int l_min, int l_max, int step = 2);

/// Transfer time from transfer_time_report on the same kind of grid.
ScalingSeries chain_time_sweep(int dimension, double alpha, int l_min, int l_max, double epsilon_target,
                               int step = 2);

enum class RingObservable { Q2, Delta0, Bandwidth, Time };

const char* ring_observable_name(RingObservable observable);

/// Time uses ring_choose_g at `epsilon_target`, i.e. T = pi sqrt(2 q2 / eps).
ScalingSeries ring_sweep(int dimension, double alpha, std::span<const long> sides, RingObservable observable,
                         double epsilon_target = 0.01);

struct SaturationReport {
    int dimension = 1;
    double alpha = 0.0;
    std::string protocol;
    LRExponent optimal;
    std::string measure;  // what `measured` is
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string verdict;
};

/// `series` is T (or Q) against L from one of the sweeps above. The chain and
/// uniform protocols are judged against lr_exponent; the ring protocol
/// against ring_time_exponent, with the gap to the optimum reported.
SaturationReport saturation_report(int dimension, double alpha, const std::string& protocol,
                                   const ScalingSeries& series);

/// LONGWALK_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count();

/// f(0..n-1) on up to worker_count() threads; results in index order. The
/// first exception thrown by any call is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<R>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(worker_count(), n);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace longwalk

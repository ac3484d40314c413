#include "longwalk/numkit.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "longwalk/error.hpp"

namespace longwalk::numkit {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_circulant_row(std::span<const double> row) {
    const std::size_t n = row.size();
    require(n >= 2 && n % 2 == 0, ErrorKind::InvalidArgument,
            "real_dft_circulant: row length must be even and >= 2");
    double scale = 0.0;
    for (double x : row) {
        require(std::isfinite(x), ErrorKind::InvalidArgument, "real_dft_circulant: non-finite entry");
        scale = std::max(scale, std::abs(x));
    }
    for (std::size_t r = 1; r < n / 2; ++r) {
        if (std::abs(row[r] - row[n - r]) > 1e-12 * scale) {
            std::ostringstream os;
            os << "real_dft_circulant: row is not symmetric at r = " << r;
            fail(ErrorKind::InvalidArgument, os.str());
        }
    }
}

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<double> fft_circulant(std::span<const double> row) {
    const std::size_t n = row.size();
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    std::copy(row.begin(), row.end(), in);
    fftw_execute(plan);
    std::vector<double> eig(n);
    for (std::size_t k = 0; k <= n / 2; ++k) eig[k] = out[k][0];
    for (std::size_t k = n / 2 + 1; k < n; ++k) eig[k] = eig[n - k];
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return eig;
}

}  // namespace

std::vector<double> real_dft_circulant_direct(std::span<const double> first_row) {
    const std::size_t n = first_row.size();
    std::vector<double> cosines(n);
    for (std::size_t m = 0; m < n; ++m)
        cosines[m] = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
    std::vector<double> eig(n, 0.0);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        double acc = 0.0;
        std::size_t phase = 0;
        for (std::size_t r = 0; r < n; ++r) {
            acc += first_row[r] * cosines[phase];
            phase += k;
            if (phase >= n) phase -= n;
        }
        eig[k] = acc;
    }
    for (std::size_t k = n / 2 + 1; k < n; ++k) eig[k] = eig[n - k];
    return eig;
}

std::vector<double> real_dft_circulant(std::span<const double> first_row) {
    check_circulant_row(first_row);
    const std::size_t n = first_row.size();
    if (is_power_of_two(n)) return fft_circulant(first_row);
    if (n > kDirectDftCap) {
        std::ostringstream os;
        os << "real_dft_circulant: non-power-of-two length " << n << " exceeds the direct-path cap "
           << kDirectDftCap;
        fail(ErrorKind::InvalidArgument, os.str());
    }
    return real_dft_circulant_direct(first_row);
}

}  // namespace longwalk::numkit

/// @file fft.cpp
/// @brief FFTW3 plan cache and transform helpers.

#include "onsager/fft.hpp"
#include "onsager/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

namespace onsager {

namespace {

struct Plan {
    fftw_plan plan = nullptr;
    fftw_complex* buffer = nullptr;
    std::size_t size = 0;
    ~Plan() {
        if (plan) fftw_destroy_plan(plan);
        if (buffer) fftw_free(buffer);
    }
};

using PlanKey = std::tuple<int, std::size_t, std::size_t, std::size_t, int, int>;

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::map<PlanKey, std::unique_ptr<Plan>>& plan_cache() {
    static std::map<PlanKey, std::unique_ptr<Plan>> cache;
    return cache;
}

// axis = -1 means transform every axis. Caller holds the mutex.
Plan& get_plan(const Grid& g, int axis, int sign) {
    const PlanKey key{g.rank(), g.dim(0), g.dim(1), g.rank() > 2 ? g.dim(2) : 1, axis, sign};
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto p = std::make_unique<Plan>();
    p->size = g.size();
    p->buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * p->size));
    if (!p->buffer) fail(ErrorKind::internal, "fftw_malloc failed");

    std::vector<fftw_iodim> dims, howmany;
    for (int a = 0; a < g.rank(); ++a) {
        fftw_iodim d;
        d.n = static_cast<int>(g.dim(a));
        d.is = static_cast<int>(g.stride(a));
        d.os = d.is;
        if (axis < 0 || axis == a) dims.push_back(d);
        else howmany.push_back(d);
    }
    p->plan = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(),
                                 static_cast<int>(howmany.size()), howmany.data(), p->buffer,
                                 p->buffer, sign, FFTW_ESTIMATE);
    if (!p->plan) fail(ErrorKind::internal, "FFTW plan creation failed");
    Plan& ref = *p;
    cache.emplace(key, std::move(p));
    return ref;
}

void run(const Grid& g, ComplexField& data, int axis, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    Plan& p = get_plan(g, axis, sign);
    std::memcpy(p.buffer, data.data(), sizeof(fftw_complex) * p.size);
    fftw_execute(p.plan);
    std::memcpy(static_cast<void*>(data.data()), p.buffer, sizeof(fftw_complex) * p.size);
}

} // namespace

ComplexField fft_forward(const Grid& grid, const ScalarField& f) {
    require(f.size() == grid.size(), "fft: field size mismatch");
    ComplexField c(f.begin(), f.end());
    run(grid, c, -1, FFTW_FORWARD);
    return c;
}

ComplexField fft_forward(const Grid& grid, const ComplexField& f) {
    require(f.size() == grid.size(), "fft: field size mismatch");
    ComplexField c = f;
    run(grid, c, -1, FFTW_FORWARD);
    return c;
}

ScalarField fft_inverse_real(const Grid& grid, const ComplexField& fhat) {
    require(fhat.size() == grid.size(), "fft: field size mismatch");
    ComplexField c = fhat;
    run(grid, c, -1, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(grid.size());
    ScalarField out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real() * scale;
    return out;
}

void fft_axis(const Grid& grid, ComplexField& data, int axis, int sign) {
    require(data.size() == grid.size(), "fft: field size mismatch");
    require(axis >= 0 && axis < grid.rank(), "fft: bad axis");
    run(grid, data, axis, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
}

long signed_mode(std::size_t m, std::size_t n) {
    const long mm = static_cast<long>(m);
    const long nn = static_cast<long>(n);
    return mm <= nn / 2 ? mm : mm - nn;
}

double wavenumber(const Grid& grid, int axis, std::size_t m) {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_mode(m, grid.dim(axis))) / grid.extent(axis);
}

ScalarField spectral_derivative(const Grid& grid, const ScalarField& f, int axis) {
    require(grid.periodic(axis), "spectral derivative requires a periodic axis");
    ComplexField c(f.begin(), f.end());
    fft_axis(grid, c, axis, -1);
    const std::size_t n = grid.dim(axis);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::size_t m = grid.unflat(i)[axis];
        if (is_nyquist(m, n)) c[i] = 0.0;
        else c[i] *= Complex(0.0, wavenumber(grid, axis, m) * scale);
    }
    fft_axis(grid, c, axis, +1);
    ScalarField out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

} // namespace onsager

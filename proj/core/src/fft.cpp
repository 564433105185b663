#include "gndline/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace gndline {

namespace {

// FFTW planning is not thread-safe; execution of a private plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<Complex> transform(const std::vector<Complex>& x, int sign) {
    if (x.empty()) throw std::invalid_argument("fft: empty input");
    const std::size_t n = x.size();
    std::vector<Complex> in(x);
    std::vector<Complex> out(n);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    if (plan == nullptr) throw std::runtime_error("fft: planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

std::vector<Complex> fft_forward(const std::vector<Complex>& x) {
    return transform(x, FFTW_FORWARD);
}

std::vector<Complex> fft_inverse(const std::vector<Complex>& x) {
    std::vector<Complex> out = transform(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (Complex& v : out) v *= scale;
    return out;
}

}  // namespace gndline

#include "mdc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace mdc::fft {
namespace {

std::mutex plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan>& plan_cache() {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(int n, int ncomp, int sign, fftw_complex* data) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(n, ncomp, sign);
    auto it = plan_cache().find(key);
    if (it != plan_cache().end()) return it->second;
    const int dims[3] = {n, n, n};
    // FFTW_UNALIGNED: plans must accept whatever buffers std::vector hands us
    // through the new-array execute interface.
    fftw_plan p = fftw_plan_many_dft(3, dims, ncomp, data, nullptr, ncomp, 1, data, nullptr,
                                     ncomp, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr) throw std::runtime_error("fftw plan creation failed");
    plan_cache().emplace(key, p);
    return p;
}

} // namespace

void dft3(int n, int ncomp, std::complex<double>* data, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_plan p = get_plan(n, ncomp, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, raw);
    fftw_execute_dft(p, raw, raw);
}

} // namespace mdc::fft

#include "wgs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace wgs::fft {

namespace {

using Key = std::tuple<int, int, int, int, int>;

std::mutex g_mutex;
std::map<Key, fftw_plan>& cache() {
    static std::map<Key, fftw_plan> c;
    return c;
}

fftw_plan get_plan(cplx* data, int n, int howmany, int stride, int dist, int sign) {
    Key key{n, howmany, stride, dist, sign};
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
    auto* p = reinterpret_cast<fftw_complex*>(data);
    // UNALIGNED so the plan can be re-executed on any std::vector storage.
    fftw_plan plan = fftw_plan_many_dft(1, &n, howmany, p, nullptr, stride, dist, p, nullptr,
                                        stride, dist, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache().emplace(key, plan);
    return plan;
}

} // namespace

void dft_many(cplx* data, int n, int howmany, int stride, int dist, int sign) {
    fftw_plan plan = get_plan(data, n, howmany, stride, dist, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

} // namespace wgs::fft

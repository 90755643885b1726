#include "qrelax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace qrelax::fft {
namespace {

// Plans are created once per (dim, n, kind) with FFTW_ESTIMATE so the chosen
// algorithm depends only on the transform size, and FFTW_UNALIGNED so they can
// be executed on any caller buffer via the new-array interface.
enum class Kind { c2c_fwd, c2c_bwd, r2c, c2r };

fftw_plan get_plan(const Grid& g, Kind kind) {
    using Key = std::tuple<int, int, int>;
    static std::map<Key, fftw_plan> cache;
    static std::mutex mtx;

    std::lock_guard<std::mutex> lock(mtx);
    const Key key{g.dim, g.n, static_cast<int>(kind)};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int n = g.n;
    const std::size_t nodes = g.node_count();
    const std::size_t half = (g.dim == 1) ? (n / 2 + 1)
                                          : static_cast<std::size_t>(n) * (n / 2 + 1);

    std::vector<std::complex<double>> cbuf(nodes);
    std::vector<std::complex<double>> hbuf(half);
    std::vector<double> rbuf(nodes);
    auto* c = reinterpret_cast<fftw_complex*>(cbuf.data());
    auto* h = reinterpret_cast<fftw_complex*>(hbuf.data());

    fftw_plan p = nullptr;
    switch (kind) {
        case Kind::c2c_fwd:
            p = (g.dim == 1) ? fftw_plan_dft_1d(n, c, c, FFTW_FORWARD, flags)
                             : fftw_plan_dft_2d(n, n, c, c, FFTW_FORWARD, flags);
            break;
        case Kind::c2c_bwd:
            p = (g.dim == 1) ? fftw_plan_dft_1d(n, c, c, FFTW_BACKWARD, flags)
                             : fftw_plan_dft_2d(n, n, c, c, FFTW_BACKWARD, flags);
            break;
        case Kind::r2c:
            p = (g.dim == 1) ? fftw_plan_dft_r2c_1d(n, rbuf.data(), h, flags)
                             : fftw_plan_dft_r2c_2d(n, n, rbuf.data(), h, flags);
            break;
        case Kind::c2r:
            p = (g.dim == 1) ? fftw_plan_dft_c2r_1d(n, h, rbuf.data(), flags)
                             : fftw_plan_dft_c2r_2d(n, n, h, rbuf.data(), flags);
            break;
    }
    cache.emplace(key, p);
    return p;
}

}  // namespace

void forward_c(const Grid& g, std::complex<double>* data) {
    auto* c = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(get_plan(g, Kind::c2c_fwd), c, c);
}

void backward_c(const Grid& g, std::complex<double>* data) {
    auto* c = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(get_plan(g, Kind::c2c_bwd), c, c);
}

std::vector<std::complex<double>> forward_r(const Grid& g, const double* data) {
    const std::size_t half = (g.dim == 1)
                                 ? static_cast<std::size_t>(g.n / 2 + 1)
                                 : static_cast<std::size_t>(g.n) * (g.n / 2 + 1);
    std::vector<std::complex<double>> spectrum(half);
    std::vector<double> in(data, data + g.node_count());  // r2c clobbers input
    fftw_execute_dft_r2c(get_plan(g, Kind::r2c), in.data(),
                         reinterpret_cast<fftw_complex*>(spectrum.data()));
    return spectrum;
}

std::vector<double> backward_r(const Grid& g, std::vector<std::complex<double>>& spectrum) {
    std::vector<double> out(g.node_count());
    fftw_execute_dft_c2r(get_plan(g, Kind::c2r),
                         reinterpret_cast<fftw_complex*>(spectrum.data()), out.data());
    const double inv = 1.0 / static_cast<double>(g.node_count());
    for (double& x : out) x *= inv;
    return out;
}

}  // namespace qrelax::fft

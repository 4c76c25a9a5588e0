#include <doctest.h>

#include "wgs/simd.hpp"

#include <random>
#include <vector>

using namespace wgs;
using simd::cplx;

namespace {

std::vector<cplx> rand_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx{g(rng), g(rng)};
    return v;
}

std::vector<double> rand_real(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& z : v) z = g(rng);
    return v;
}

} // namespace

TEST_CASE("simd variants match the scalar reference") {
    INFO("active kernel set: ", simd::active_name());
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{8},
                          std::size_t{17}, std::size_t{64}, std::size_t{1001}}) {
        auto a0 = rand_vec(n, 1);
        auto b = rand_vec(n, 2);
        auto c = rand_vec(n, 3);
        auto w = rand_real(n, 4);

        auto a_ref = a0, a_vec = a0;
        simd::scalar.cmul(a_ref.data(), b.data(), n);
        simd::active().cmul(a_vec.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a_ref[i] - a_vec[i]) < 1e-14);

        a_ref = a0;
        a_vec = a0;
        simd::scalar.cmul_conj(a_ref.data(), b.data(), n);
        simd::active().cmul_conj(a_vec.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a_ref[i] - a_vec[i]) < 1e-14);

        std::vector<cplx> o_ref(n, cplx{0.1, -0.2}), o_vec(n, cplx{0.1, -0.2});
        simd::scalar.cmul3_acc(o_ref.data(), a0.data(), b.data(), c.data(), n);
        simd::active().cmul3_acc(o_vec.data(), a0.data(), b.data(), c.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o_ref[i] - o_vec[i]) < 1e-13);

        auto y_ref = c, y_vec = c;
        cplx alpha{0.7, -0.3};
        simd::scalar.caxpy(alpha, a0.data(), y_ref.data(), n);
        simd::active().caxpy(alpha, a0.data(), y_vec.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_ref[i] - y_vec[i]) < 1e-14);

        double s_ref = simd::scalar.sumsq(a0.data(), n);
        double s_vec = simd::active().sumsq(a0.data(), n);
        CHECK(s_ref == doctest::Approx(s_vec).epsilon(1e-13));

        double ws_ref = simd::scalar.wsumsq(w.data(), a0.data(), n);
        double ws_vec = simd::active().wsumsq(w.data(), a0.data(), n);
        CHECK(ws_ref == doctest::Approx(ws_vec).epsilon(1e-13));

        std::vector<double> m_ref(n), m_vec(n);
        simd::scalar.abs2(m_ref.data(), a0.data(), n);
        simd::active().abs2(m_vec.data(), a0.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(m_ref[i] == doctest::Approx(m_vec[i]).epsilon(1e-14));
    }
}

TEST_CASE("force_scalar pins the reference path") {
    simd::force_scalar(true);
    CHECK(std::string(simd::active_name()) == "scalar");
    simd::force_scalar(false);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modband/spectral.hpp"

using namespace modband;

TEST_CASE("dft of an impulse and a tone") {
    std::vector<double> d{1, 0, 0, 0};
    for (cplx v : dft(d)) CHECK(std::abs(v - 1.0) < 1e-15);

    const int K = 8;
    std::vector<double> x(K);
    for (int k = 0; k < K; ++k) x[k] = std::cos(2 * std::numbers::pi * k / K);
    auto X = dft(x, 1.0 / K);
    CHECK(std::abs(X[1] - 0.5) < 1e-14);
    CHECK(std::abs(X[7] - 0.5) < 1e-14);
    CHECK(std::abs(X[0]) < 1e-14);
}

TEST_CASE("dft round trip") {
    std::vector<cplx> x{{1, 2}, {-0.5, 0}, {3, -1}, {0, 0.25}, {2, 2}};
    auto back = idft(dft(std::span<const cplx>(x), 0.2), 0.2);
    for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(back[k] - x[k]) < 1e-14);
}

TEST_CASE("differences and sums") {
    std::vector<double> x{1, 4, 9, 16};
    CHECK(cyclic_difference(x) == std::vector<double>{3, 5, 7, -15});
    CHECK(finite_difference(x, 1) == std::vector<double>{3, 5, 7});
    CHECK(finite_difference(x, 2) == std::vector<double>{2, 2});
    CHECK(finite_difference(x, 0) == x);
    CHECK(prefix_sum(x) == std::vector<double>{0, 1, 5, 14, 30});
}

TEST_CASE("prefix sum inverts the difference") {
    std::vector<double> x{0.3, -1.2, 2.5, 0.0, 4.75};
    auto s = prefix_sum(finite_difference(x, 1));
    for (std::size_t k = 0; k < x.size(); ++k) CHECK(s[k] + x[0] == doctest::Approx(x[k]));
}

TEST_CASE("wrap index") {
    CHECK(wrap_index(-1, 5) == 4);
    CHECK(wrap_index(12, 5) == 2);
    CHECK(wrap_index(-10, 5) == 0);
}

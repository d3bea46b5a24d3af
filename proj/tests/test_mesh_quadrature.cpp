#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "softiga/error.hpp"
#include "softiga/mesh.hpp"
#include "softiga/quadrature.hpp"

using namespace softiga;

TEST_SUITE("mesh") {
  TEST_CASE("uniform mesh of 80 elements on [-20, 20] has h = 0.5") {
    const Mesh1D m = uniform_mesh(20.0, 80);
    CHECK(m.num_elements() == 80);
    for (std::size_t e = 0; e < m.num_elements(); ++e)
      CHECK(m.element_size(e) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.left() == -20.0);
    CHECK(m.right() == 20.0);
    CHECK(m.max_element_size() == doctest::Approx(0.5));
  }

  TEST_CASE("small uniform meshes") {
    const Mesh1D one = uniform_mesh(1.0, 1);
    CHECK(one.num_elements() == 1);
    CHECK(one.breakpoint(0) == -1.0);
    CHECK(one.breakpoint(1) == 1.0);
    const Mesh1D fine = uniform_mesh(20.0, 4000);
    CHECK(fine.max_element_size() == doctest::Approx(0.01).epsilon(1e-12));
  }

  TEST_CASE("uniform meshes are exactly symmetric") {
    for (std::size_t n : {1u, 2u, 7u, 80u, 5000u}) {
      const Mesh1D m = uniform_mesh(20.0, n);
      const auto bp = m.breakpoints();
      for (std::size_t i = 0; i <= n; ++i)
        CHECK(bp[i] == -bp[n - i]);
      CHECK(m.is_symmetric(0.0));
    }
  }

  TEST_CASE("zero growth reproduces the uniform mesh bitwise") {
    const Mesh1D g = graded_mesh({20.0, 80, 0.0});
    const Mesh1D u = uniform_mesh(20.0, 80);
    REQUIRE(g.num_elements() == u.num_elements());
    for (std::size_t i = 0; i <= 80; ++i)
      CHECK(g.breakpoint(i) == u.breakpoint(i));
  }

  TEST_CASE("graded mesh with sizes s, 2s on each half") {
    // s + 2s = 2 on [0, 2]: s = 2/3, outer element 4/3.
    const Mesh1D m = graded_mesh({2.0, 4, 1.0});
    const double expected[] = {-2.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, 2.0};
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(m.breakpoint(i) == doctest::Approx(expected[i]).epsilon(1e-14));
  }

  TEST_CASE("graded meshes: symmetric, cover the domain, sizes grow outward") {
    for (double g : {0.0, 0.05, 0.1, 0.5, 3.0}) {
      for (std::size_t n : {2u, 4u, 10u, 80u, 160u}) {
        CAPTURE(g);
        CAPTURE(n);
        const Mesh1D m = graded_mesh({20.0, n, g});
        CHECK(m.num_elements() == n);
        CHECK(m.is_symmetric(1e-12));
        const auto sizes = m.element_sizes();
        CHECK(std::accumulate(sizes.begin(), sizes.end(), 0.0) == doctest::Approx(40.0).epsilon(1e-14));
        for (std::size_t e = n / 2; e + 1 < n; ++e)
          CHECK(sizes[e + 1] >= sizes[e] * (1.0 - 1e-14));
        CHECK(m.breakpoint(n / 2) == 0.0);
      }
    }
  }

  TEST_CASE("graded mesh sizes form an arithmetic progression") {
    const double g = 0.25;
    const Mesh1D m = graded_mesh({10.0, 12, g});
    const auto sizes = m.element_sizes();
    const double s = sizes[6];
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(sizes[6 + i] == doctest::Approx(s * (1.0 + g * static_cast<double>(i))).epsilon(1e-13));
  }

  TEST_CASE("invalid meshes are rejected") {
    CHECK_THROWS_AS(Mesh1D({1.0}), InvalidArgument);
    CHECK_THROWS_AS(Mesh1D({0.0, 1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(Mesh1D({0.0, 2.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(uniform_mesh(20.0, 0), InvalidArgument);
    CHECK_THROWS_AS(uniform_mesh(-1.0, 4), InvalidArgument);
    CHECK_THROWS_AS(graded_mesh({20.0, 5, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(graded_mesh({20.0, 4, -0.1}), InvalidArgument);
  }

  TEST_CASE("find_element takes the right element on breakpoints") {
    const Mesh1D m({0.0, 1.0, 3.0, 4.0});
    CHECK(m.find_element(0.0) == 0);
    CHECK(m.find_element(0.5) == 0);
    CHECK(m.find_element(1.0) == 1);
    CHECK(m.find_element(2.9) == 1);
    CHECK(m.find_element(3.0) == 2);
    CHECK(m.find_element(4.0) == 2);
    CHECK(m.find_element(4.5) == 2);
    CHECK(m.find_element(-0.1) == 0);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("low-order rules") {
    const auto q1 = gauss_rule(1);
    CHECK(q1.nodes.size() == 1);
    CHECK(q1.nodes[0] == doctest::Approx(0.0));
    CHECK(q1.weights[0] == doctest::Approx(2.0));
    const auto q2 = gauss_rule(2);
    CHECK(q2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(q2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(q2.weights[0] == doctest::Approx(1.0));
  }

  TEST_CASE("q-point rule integrates monomials up to degree 2q-1 exactly") {
    for (int q = 1; q <= kMaxQuadratureOrder; ++q) {
      CAPTURE(q);
      const auto rule = gauss_rule(q);
      REQUIRE(rule.nodes.size() == static_cast<std::size_t>(q));
      for (int k = 0; k <= 2 * q - 1; ++k) {
        double s = 0.0;
        for (int i = 0; i < q; ++i)
          s += rule.weights[i] * std::pow(rule.nodes[i], k);
        const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(s - exact) <= 1e-13);
      }
    }
  }

  TEST_CASE("weights sum to 2 and five points integrate x^8") {
    for (int q = 1; q <= kMaxQuadratureOrder; ++q) {
      const auto rule = gauss_rule(q);
      double s = 0.0;
      for (double w : rule.weights)
        s += w;
      CHECK(std::abs(s - 2.0) <= 1e-14);
    }
    const auto r5 = gauss_rule(5);
    double s = 0.0;
    for (int i = 0; i < 5; ++i)
      s += r5.weights[i] * std::pow(r5.nodes[i], 8);
    CHECK(std::abs(s - 2.0 / 9.0) <= 1e-12);
  }

  TEST_CASE("random polynomials of degree 2q-1 are integrated exactly") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int q : {2, 4, 7, 12, 20}) {
      const auto rule = gauss_rule(q);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(2 * q));
        for (double& v : c)
          v = u(rng);
        double exact = 0.0, approx = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
          exact += k % 2 ? 0.0 : c[k] * 2.0 / static_cast<double>(k + 1);
        for (int i = 0; i < q; ++i) {
          double v = 0.0;
          for (std::size_t k = c.size(); k-- > 0;)
            v = v * rule.nodes[i] + c[k];
          approx += rule.weights[i] * v;
        }
        CHECK(std::abs(approx - exact) <= 1e-12);
      }
    }
  }

  TEST_CASE("nodes ascend inside (-1, 1) and are symmetric") {
    for (int q : {3, 8, 17, 30}) {
      const auto rule = gauss_rule(q);
      for (int i = 0; i < q; ++i) {
        CHECK(std::abs(rule.nodes[i]) < 1.0);
        CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[q - 1 - i]).epsilon(1e-14));
        CHECK(rule.weights[i] > 0.0);
        if (i > 0)
          CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      }
    }
  }

  TEST_CASE("out-of-range orders are rejected") {
    CHECK_THROWS_AS(gauss_rule(0), InvalidArgument);
    CHECK_THROWS_AS(gauss_rule(kMaxQuadratureOrder + 1), InvalidArgument);
  }
}

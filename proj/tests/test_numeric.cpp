#include <cmath>
#include <set>

#include "helpers.hpp"
#include "otreg/cost.hpp"
#include "otreg/diff.hpp"
#include "otreg/errors.hpp"
#include "otreg/newton.hpp"
#include "otreg/sampling.hpp"

using namespace otreg;

TEST_SUITE("linalg") {
    TEST_CASE("vector basics") {
        const Vec a{3.0, 4.0};
        CHECK(a.size() == 2);
        CHECK(a.norm() == 5.0);
        CHECK(dot(a, Vec{1.0, 1.0}) == 7.0);
        CHECK(distance(a, Vec{0.0, 0.0}) == 5.0);
        CHECK(Vec::unit(3, 1) == Vec{0.0, 1.0, 0.0});
        CHECK_THROWS_AS(require_dim(a, 3, "a"), DomainError);
    }

    TEST_CASE("determinant, inverse and solve") {
        const Mat m{{2.0, 1.0, 0.0}, {1.0, 3.0, 1.0}, {0.0, 1.0, 4.0}};
        CHECK_NEAR(m.det(), 18.0, 1e-12);
        CHECK_MAT_NEAR(m * m.inverse(), Mat::identity(3), 1e-14);
        const Vec b{1.0, 2.0, 3.0};
        CHECK_VEC_NEAR(m * m.solve(b), b, 1e-14);
        CHECK_THROWS_AS(Mat({{1.0, 2.0}, {2.0, 4.0}}).inverse(), SingularMatrix);
    }

    TEST_CASE("quadratic form and transpose") {
        const Mat m{{1.0, 2.0}, {3.0, 4.0}};
        CHECK(m.form(Vec{1.0, 0.0}, Vec{0.0, 1.0}) == 2.0);
        CHECK(m.transpose()(0, 1) == 3.0);
    }
}

TEST_SUITE("diff") {
    TEST_CASE("gradient of x.x at (1,2)") {
        const Vec g = grad([](const Vec& x) { return dot(x, x); }, Vec{1.0, 2.0});
        CHECK_VEC_NEAR(g, (Vec{2.0, 4.0}), 1e-8);
    }

    TEST_CASE("gradient of a constant field is zero") {
        const Vec g = grad([](const Vec&) { return 7.25; }, Vec{-3.0, 0.5, 11.0});
        CHECK(g == Vec(3));
    }

    TEST_CASE("gradient of -log|x - (3,0)| at (1,0)") {
        const Vec a{3.0, 0.0};
        const Vec g = grad([&](const Vec& x) { return -std::log((x - a).norm()); }, Vec{1.0, 0.0});
        CHECK_VEC_NEAR(g, (Vec{0.5, 0.0}), 1e-7);
    }

    TEST_CASE("cubic polynomial derivatives") {
        // f = x^3 y + 2 x y^2 - y^3
        auto f = [](const Vec& v) { return v[0] * v[0] * v[0] * v[1] + 2 * v[0] * v[1] * v[1] - v[1] * v[1] * v[1]; };
        for (const Vec& p : {Vec{0.3, -1.2}, Vec{2.0, 1.5}, Vec{-4.0, 3.0}}) {
            const double x = p[0], y = p[1];
            const Vec g_exact{3 * x * x * y + 2 * y * y, x * x * x + 4 * x * y - 3 * y * y};
            const Mat h_exact{{6 * x * y, 3 * x * x + 4 * y}, {3 * x * x + 4 * y, 4 * x - 6 * y}};
            // Second differences of values carry rounding ~ eps |f| / h^2.
            const double fscale = std::max(1.0, std::abs(f(p)));
            CHECK_VEC_NEAR(grad(f, p), g_exact, 1e-9 * fscale);
            CHECK_MAT_NEAR(hessian(f, p), h_exact, 2e-7 * fscale);
            DiffConfig plain;
            plain.richardson = false;
            CHECK_VEC_NEAR(grad(f, p, plain), g_exact, 1e-7 * fscale);
            CHECK_MAT_NEAR(hessian(f, p, plain), h_exact, 1e-7 * fscale);
        }
    }

    TEST_CASE("jacobian row/column convention") {
        const Mat j = jacobian([](const Vec& v) { return Vec{v[0] * v[1], 3 * v[1]}; }, Vec{2.0, 5.0});
        CHECK_MAT_NEAR(j, (Mat{{5.0, 2.0}, {0.0, 3.0}}), 1e-9);
    }

    TEST_CASE("cost Hessians of the quadratic and bilinear costs") {
        const Vec x{0.3, -0.7}, y{1.1, 0.4};
        const CostFunction quad = builtin("quadratic");
        CHECK(hess_mixed(quad, x, y) == -Mat::identity(2));
        CHECK(hess_xx(quad, x, y) == Mat::identity(2));
        // Value-only path: exact stencils up to rounding ~ eps |c| / h^2.
        CHECK_MAT_NEAR(hess_mixed(quad.without_derivatives(), x, y), -Mat::identity(2), 3e-7);
        CHECK_MAT_NEAR(hess_xx(quad.without_derivatives(), x, y), Mat::identity(2), 3e-7);
        const CostFunction dot_cost("dot", {[](const Vec& xx, const Vec& yy) { return dot(xx, yy); }});
        CHECK_MAT_NEAR(hess_mixed(dot_cost, Vec{0.2, 0.9}, Vec{-1.0, 2.0}), Mat::identity(2), 3e-7);
        CHECK_MAT_NEAR(hess_xx(dot_cost, Vec{0.2, 0.9}, Vec{-1.0, 2.0}), Mat::zero(2), 3e-7);
    }

    TEST_CASE("log cost Hessians at x=(0,0), y=(1,0)") {
        // w = x - y = (-1, 0): c_xx = -(I - 2 w w^T / |w|^2) / |w|^2 = diag(1, -1), c_xy = -c_xx.
        const Vec x{0.0, 0.0}, y{1.0, 0.0};
        for (const auto& c : {builtin("log"), builtin("log").without_derivatives()}) {
            CHECK_MAT_NEAR(hess_mixed(c, x, y), (Mat{{-1.0, 0.0}, {0.0, 1.0}}), 1e-6);
            CHECK_MAT_NEAR(hess_xx(c, x, y), (Mat{{1.0, 0.0}, {0.0, -1.0}}), 1e-6);
        }
    }

    TEST_CASE("mixed Hessian matches differentiation in the opposite order") {
        auto f = [](const Vec& x, const Vec& y) {
            return std::sin(x[0] * y[1]) + x[1] * x[1] * y[0] + std::exp(0.3 * x[0] * y[0]);
        };
        const CostFunction c("asym", {f});
        const Vec x{0.4, -0.3}, y{0.7, 1.2};
        const Mat h = hess_mixed(c, x, y);
        // d/dy of the x-gradient, then transpose of d/dx of the y-gradient.
        const Mat dy_of_gx = jacobian([&](const Vec& yy) { return cost_grad_x(c, x, yy); }, y);
        const Mat dx_of_gy = jacobian([&](const Vec& xx) { return cost_grad_y(c, xx, y); }, x);
        CHECK_MAT_NEAR(h, dy_of_gx, 1e-6);
        CHECK_MAT_NEAR(h, dx_of_gy.transpose(), 1e-6);
        CHECK(std::abs(h(0, 1) - h(1, 0)) > 0.1);  // the test cost is genuinely asymmetric
    }

    TEST_CASE("non-finite stencil values are errors") {
        CHECK_THROWS_AS(grad([](const Vec& x) { return std::sqrt(x[0]); }, Vec{0.0}), NonFiniteSample);
        CHECK_THROWS_AS(hess_mixed(builtin("log"), Vec{0.0, 0.0}, Vec{0.0, 0.0}), DomainError);
    }

    TEST_CASE("derivatives are pure") {
        const CostFunction c = builtin("sqrt_plus").without_derivatives();
        const Vec x{0.1, 0.2}, y{-0.3, 0.5};
        CHECK(hess_mixed(c, x, y) == hess_mixed(c, x, y));
        CHECK(cost_grad_x(c, x, y) == cost_grad_x(c, x, y));
    }

    TEST_CASE("config validation") {
        DiffConfig cfg;
        cfg.step = 0.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_SUITE("newton") {
    TEST_CASE("linear system converges in one step") {
        const Vec a{3.0, -1.0};
        const NewtonResult r = newton_solve([&](const Vec& x) { return x - a; }, Vec{0.0, 0.0});
        CHECK_VEC_NEAR(r.x, a, 1e-12);
        // The finite-difference Jacobian is exact only to ~1e-12, so a second
        // step may follow at the default tolerance.
        DiffConfig cfg;
        cfg.newton_tol = 1e-10;
        CHECK(newton_solve([&](const Vec& x) { return x - a; }, Vec{0.0, 0.0}, cfg).iterations == 1);
    }

    TEST_CASE("cube root of 8") {
        const NewtonResult r = newton_solve([](const Vec& x) { return Vec{x[0] * x[0] * x[0] - 8.0}; }, Vec{3.0});
        CHECK_NEAR(r.x[0], 2.0, 1e-12);
    }

    TEST_CASE("no root raises NoConvergence") {
        CHECK_THROWS_AS(newton_solve([](const Vec& x) { return Vec{x[0] * x[0] + 1.0}; }, Vec{0.5}), NoConvergence);
    }

    TEST_CASE("exact root is returned unchanged") {
        const Vec root{0.37, -2.5};
        const NewtonResult r = newton_solve([&](const Vec& x) { return (x - root) * 2.0; }, root);
        CHECK(r.x == root);
        CHECK(r.iterations == 0);
    }

    TEST_CASE("domain errors during the line search damp the step") {
        // sqrt(x) - 1 from x = 4: the full Newton step lands at x < 0.
        auto F = [](const Vec& x) {
            if (x[0] < 0.0) throw DomainError("negative");
            return Vec{std::sqrt(x[0]) - 0.1};
        };
        const NewtonResult r = newton_solve(F, Vec{4.0});
        CHECK_NEAR(r.x[0], 0.01, 1e-12);
    }
}

TEST_SUITE("sampling") {
    TEST_CASE("rng streams are deterministic and distinct") {
        Rng a = Rng::stream(42, 3), b = Rng::stream(42, 3), c = Rng::stream(42, 4);
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
        Rng r(1);
        for (int i = 0; i < 1000; ++i) {
            const double u = r.uniform();
            CHECK((u >= 0.0 && u < 1.0));
        }
        CHECK_NEAR(Rng(9).unit_vector(3).norm(), 1.0, 1e-15);
    }

    TEST_CASE("grid includes the corners") {
        const DomainBox box{Vec{-1.0, 0.0}, Vec{1.0, 2.0}};
        CHECK(box.grid_size(3) == 9);
        std::set<std::pair<double, double>> pts;
        for (long i = 0; i < 9; ++i) pts.emplace(box.grid_point(3, i)[0], box.grid_point(3, i)[1]);
        CHECK(pts.size() == 9);
        CHECK(pts.count({-1.0, 0.0}) == 1);
        CHECK(pts.count({1.0, 2.0}) == 1);
        CHECK(pts.count({0.0, 1.0}) == 1);
    }

    TEST_CASE("box and plan validation") {
        CHECK_THROWS_AS((DomainBox{Vec{1.0}, Vec{0.0}}.validate()), ConfigError);
        SamplePlan plan;
        plan.grid_per_axis = 1;
        CHECK_THROWS_AS(plan.validate(), ConfigError);
    }

    TEST_CASE("parallel_map keeps index order") {
        const auto v = parallel_map<long>(1000, [](long i) { return i * i; });
        REQUIRE(v.size() == 1000);
        for (long i = 0; i < 1000; ++i) CHECK(v[static_cast<std::size_t>(i)] == i * i);
    }
}

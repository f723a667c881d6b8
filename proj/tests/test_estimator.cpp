#include "doctest.h"

#include <cmath>
#include <random>
#include <variant>

#include "vsvm/dataset.hpp"
#include "vsvm/error.hpp"
#include "vsvm/estimator.hpp"

using namespace vsvm;

namespace {

FitOptions options(KernelSpec spec) {
    FitOptions o;
    o.kernel = spec;
    return o;
}

const Model& require_model(const FitResult& r) {
    REQUIRE(std::holds_alternative<Model>(r));
    return std::get<Model>(r);
}

}  // namespace

TEST_CASE("xor with rbf fits a model") {
    const Dataset d = xor_dataset();
    const FitResult r = fit(d, options(KernelSpec::rbf(1.0)));
    const Model& m = require_model(r);
    CHECK(m.alpha().size() == 4);
    CHECK(m.diagnostics().status == QpStatus::optimal);
    CHECK(m.diagnostics().gram_report.rank == 4);
    CHECK(m.diagnostics().feasibility.feasible());
    CHECK(m.gamma() == 1.0);

    double mean = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double f = m.raw(d.point(i));
        CHECK(f >= -1e-6);
        CHECK(f <= 1.0 + 1e-6);
        mean += f / 4.0;
    }
    CHECK(std::abs(mean - 0.5) <= 1e-6);

    // independent conic QP reference
    CHECK(m.predict(Vector{0, 1}) == doctest::Approx(0.5670313873807564).epsilon(1e-6));
    CHECK(m.raw(d.point(0)) == doctest::Approx(0.4329686126192437).epsilon(1e-6));
    // regression fixture from this solver
    CHECK(std::abs(m.predict(Vector{0, 1}) - 0.5670313872542629) <= 1e-12);
}

TEST_CASE("xor with ink-spline fails with a full diagnosis") {
    const FitResult r = fit(xor_dataset(), options(KernelSpec::ink_spline0()));
    REQUIRE(std::holds_alternative<FitFailure>(r));
    const FitFailure& f = std::get<FitFailure>(r);
    CHECK(f.diagnostics.gram_report.rank == 2);
    CHECK(f.diagnostics.status == QpStatus::singular_kkt);
    CHECK(f.diagnostics.solver.deficiency == Deficiency::gram_rank);
    CHECK(f.diagnostics.feasibility.feasible());
    CHECK(f.diagnostics.feasibility.witness_alpha.has_value());
    CHECK(f.last_iterate.size() == 4);
}

TEST_CASE("evaluate") {
    const Dataset d = xor_dataset();
    const FitResult fitted = fit(d, options(KernelSpec::rbf(1.0)));
    const Model& m = require_model(fitted);
    const Metrics mt = evaluate(m, d);
    CHECK(mt.max_constraint_violation <= 1e-6);
    CHECK(mt.mean_probability == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(mt.mean_abs_error == doctest::Approx(0.43296861261924374).epsilon(1e-6));
    CHECK(std::abs(mt.mean_abs_error - 0.43296861274573706) <= 1e-12);

    const Model zero(Vector(4, 0.0), d, KernelSpec::rbf(1.0), 1.0);
    CHECK(evaluate(zero, d).mean_abs_error == 0.5);
    CHECK(evaluate(zero, d).mean_probability == 0.0);
    CHECK(zero.predict(Vector{0.3, -7}) == 0.0);
    CHECK(zero.raw(Vector{12, 4}) == 0.0);

    CHECK_THROWS_AS(m.predict(Vector{1, 2, 3}), ContractViolation);
    CHECK_THROWS_AS(evaluate(m, gaussian_mixture({})), ContractViolation);
}

TEST_CASE("predictions are clipped to [0, 1]") {
    const Dataset d = xor_dataset();
    const Model big(Vector{0, 3, 0, 0}, d, KernelSpec::ink_spline0(), 1.0);
    CHECK(big.raw(Vector{1, 1}) == 6.0);
    CHECK(big.predict(Vector{1, 1}) == 1.0);
    const Model neg(Vector{0, -3, 0, 0}, d, KernelSpec::ink_spline0(), 1.0);
    CHECK(neg.predict(Vector{1, 1}) == 0.0);
    CHECK_THROWS_AS(Model(Vector{1, 2}, d, KernelSpec::rbf(), 1.0), ContractViolation);
}

TEST_CASE("fit contracts") {
    const Dataset one_class(Matrix{{0}, {1}, {2}}, {1, 1, 1});
    CHECK_THROWS_AS(fit(one_class, options(KernelSpec::rbf())), ContractViolation);
    const Dataset single(Matrix{{0}}, {1});
    CHECK_THROWS_AS(fit(single, options(KernelSpec::rbf())), ContractViolation);
    FitOptions o = options(KernelSpec::rbf());
    o.gamma = -1.0;
    CHECK_THROWS_AS(fit(xor_dataset(), o), ContractViolation);
    o = options(KernelSpec::rbf());
    o.v = Matrix::identity(3);
    CHECK_THROWS_AS(fit(xor_dataset(), o), ContractViolation);
}

TEST_CASE("property: continuity of predict") {
    const Dataset d = xor_dataset();
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (const KernelSpec& spec : {KernelSpec::rbf(1.0), KernelSpec::rbf(3.0)}) {
        const FitResult fitted = fit(d, options(spec));
        const Model& m = require_model(fitted);
        double l1 = 0.0;
        for (double a : m.alpha()) l1 += std::abs(a);
        // |d/dx exp(-p |x|^2 / 2)| <= sqrt(p) e^{-1/2}
        const double lipschitz = l1 * std::sqrt(spec.param) * std::exp(-0.5);
        for (int i = 0; i < 200; ++i) {
            const Vector x{u(rng), u(rng)};
            const Vector y{x[0] + 1e-4 * u(rng), x[1] + 1e-4 * u(rng)};
            const double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
            CHECK(std::abs(m.predict(x) - m.predict(y)) <= lipschitz * dist * (1 + 1e-9) + 1e-15);
        }
    }
    // ink-spline: each min moves by at most |delta|_1
    const Model ink(Vector{0.2, -0.4, 0.7, 0.1}, d, KernelSpec::ink_spline0(), 1.0);
    for (int i = 0; i < 200; ++i) {
        const Vector x{u(rng), u(rng)};
        const Vector y{x[0] + 1e-4 * u(rng), x[1] + 1e-4 * u(rng)};
        const double l1 = std::abs(x[0] - y[0]) + std::abs(x[1] - y[1]);
        CHECK(std::abs(ink.raw(x) - ink.raw(y)) <= 1.4 * l1 * (1 + 1e-9) + 1e-15);
    }
}

TEST_CASE("property: fit is deterministic") {
    const Dataset d = xor_dataset();
    const FitResult fitted = fit(d, options(KernelSpec::rbf(1.0)));
    const Model& a = require_model(fitted);
    const FitResult again = fit(d, options(KernelSpec::rbf(1.0)));
    CHECK(require_model(again).alpha() == a.alpha());
}

TEST_CASE("property: optimal fits reproduce the class frequency") {
    std::mt19937_64 rng(62);
    std::normal_distribution<double> g(0.0, 1.0);
    int optimal = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t l = 6 + static_cast<std::size_t>(trial);
        Matrix x(l, 2);
        std::vector<int> y(l);
        for (std::size_t i = 0; i < l; ++i) {
            y[i] = i < l / 3 ? 1 : 0;
            x(i, 0) = g(rng) + 2.0 * y[i];
            x(i, 1) = g(rng);
        }
        const Dataset d(std::move(x), std::move(y));
        const FitResult r = fit(d, options(KernelSpec::rbf(0.5)));
        if (const Model* m = std::get_if<Model>(&r)) {
            ++optimal;
            CHECK(std::abs(evaluate(*m, d).mean_probability - d.p1()) <= 1e-6);
            CHECK(evaluate(*m, d).max_constraint_violation <= 1e-6);
        } else {
            CHECK(std::get<FitFailure>(r).diagnostics.status != QpStatus::optimal);
        }
    }
    CHECK(optimal > 0);
}

TEST_CASE("gaussian mixture at seed 42") {
    const Dataset d = gaussian_mixture({});
    const FitResult rbf = fit(d, options(KernelSpec::rbf(1.0)));
    REQUIRE(std::holds_alternative<FitFailure>(rbf));
    const FitFailure& f = std::get<FitFailure>(rbf);
    CHECK(f.diagnostics.status == QpStatus::singular_kkt);
    CHECK(f.diagnostics.gram_report.rank == 41);
    CHECK(f.diagnostics.feasibility.feasible());

    const FitResult ink = fit(d, options(KernelSpec::ink_spline0()));
    const Model& m = require_model(ink);
    CHECK(m.diagnostics().gram_report.rank == 200);
    CHECK(std::abs(evaluate(m, d).mean_probability - 0.5) <= 1e-6);
}

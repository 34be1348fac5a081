#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "wvctx/bounds.hpp"
#include "wvctx/pipelines.hpp"

using namespace wvctx::pipelines;
using wvctx::polytope::LinearForm;
using wvctx::polytope::evaluate;

TEST_CASE("assignment polytope at the reference parameters") {
    const auto ap = assignment_polytope(Rational(1, 4), Rational(1, 2));
    CHECK(ap.v.vertices.size() == 16);
    for (const auto& vertex : ap.v.vertices) {
        for (const auto& eq : ap.h.equalities) CHECK(evaluate(eq, vertex) == 0);
        for (const auto& ineq : ap.h.inequalities) CHECK(evaluate(ineq, vertex) >= 0);
    }
}

TEST_CASE("lemma 1 pipeline") {
    SUBCASE("reference parameters (1/4, 1/2)") {
        const auto result = lemma1_pipeline(Rational(1, 4), Rational(1, 2));
        CHECK(result.assignment_vertices.vertices.size() == 16);
        CHECK(result.deterministic_vertices.vertices.size() == 12);
        REQUIRE(result.hull_vertices.vertices.size() == 4);
        const std::vector<std::vector<Rational>> expected = {
            {Rational(0), Rational(0)},
            {Rational(0), Rational(1, 4)},
            {Rational(1), Rational(0)},
            {Rational(1), Rational(1, 2)}};
        for (const auto& want : expected) {
            bool found = false;
            for (const auto& got : result.hull_vertices.vertices) found = found || got == want;
            CHECK(found);
        }
        CHECK(result.bound_facet_present);
        CHECK_FALSE(result.trivial_regime);
    }
    SUBCASE("trivial regime p_d >= p~ leaves only the box") {
        const auto result = lemma1_pipeline(Rational(3, 4), Rational(1, 2));
        CHECK(result.trivial_regime);
        CHECK(result.trivial_facet_present);
        // The optimal facet collapses onto p_minus <= p~ and nothing tighter
        // survives: the hull is exactly the box [0,1] x [0, p~].
        CHECK(result.hull_vertices.vertices.size() == 4);
        CHECK(result.hull_facets.inequalities.size() == 4);
        CHECK(wvctx::polytope::facet_contains(result.hull_facets,
                                              LinearForm{{Rational(0), Rational(-1)}, Rational(1, 2)}));
    }
    SUBCASE("the optimal facet appears for random parameters with p_d < p~") {
        std::mt19937_64 gen(20240905);
        int done = 0;
        while (done < 10) {
            const int den_t = 3 + static_cast<int>(gen() % 7);
            const Rational p_tilde(1 + static_cast<int>(gen() % (den_t - 1)), den_t);
            const Rational p_d(1, 2 + static_cast<int>(gen() % 12));
            if (!(p_d < p_tilde)) continue;
            const auto result = lemma1_pipeline(p_d, p_tilde);
            CHECK(result.bound_facet_present);
            ++done;
        }
    }
}

TEST_CASE("lemma 2 pipeline at the reference parameters") {
    const ScenarioParams params{Rational(1, 4), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    const auto result = lemma2_pipeline(params);
    CHECK(result.assignment_vertices.vertices.size() == 16);
    CHECK(result.reduced_vertices.vertices.size() == 5);
    CHECK(result.intermediate_vertices.vertices.size() == 45);
    CHECK(result.intermediate_dim == 12);
    CHECK(result.tradeoff_vertices.vertices.size() == 10);
    // p_F - 4 C_S - 4 p_minus + 5 >= 0.
    CHECK(wvctx::polytope::facet_contains(
        result.tradeoff_facets,
        LinearForm{{Rational(1), Rational(-4), Rational(-4)}, Rational(5)}));
    CHECK(result.bound_facet_present);
}

TEST_CASE("lemma 2 facet disappears when p_d > p~") {
    const ScenarioParams params{Rational(3, 5), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    const auto result = lemma2_pipeline(params);
    CHECK_FALSE(result.bound_facet_present);
}

TEST_CASE("pipeline facets are supported by enough affinely independent vertices") {
    const auto l1 = lemma1_pipeline(Rational(1, 4), Rational(1, 2));
    const auto l2 = lemma2_pipeline(
        ScenarioParams{Rational(1, 4), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    const auto check_support = [](const wvctx::polytope::HRep& h, const wvctx::polytope::VRep& v) {
        const int dim = wvctx::polytope::affine_dimension(v);
        for (const auto& facet : h.inequalities) {
            wvctx::polytope::VRep tight;
            tight.dim = v.dim;
            for (const auto& vertex : v.vertices) {
                CHECK(evaluate(facet, vertex) >= 0);
                if (evaluate(facet, vertex) == 0) tight.vertices.push_back(vertex);
            }
            CHECK(static_cast<int>(tight.vertices.size()) >= dim);
            CHECK(wvctx::polytope::affine_dimension(tight) == dim - 1);
        }
    };
    check_support(l1.hull_facets, l1.hull_vertices);
    check_support(l2.tradeoff_facets, l2.tradeoff_vertices);
}

TEST_CASE("quantum points with nonnegative Re KD stay inside the lemma 1 hull") {
    using namespace wvctx::schemes;
    wvctx::testsupport::StateSampler sampler(53);
    int done = 0;
    while (done < 20) {
        const auto rho = sampler.pure_state(2, false);
        const auto e = sampler.projector(2, false);
        const auto pi = sampler.projector(2, false);
        if ((pi.mat() * rho.mat()).trace().real() < 1e-3) continue;
        if ((pi.mat() * e.mat() * rho.mat()).trace().real() < 0.0) continue;
        ++done;
        for (double s : {2.0, 7.0, 31.0}) {
            // Rationalize p_d to 12 digits and build the exact hull for it.
            const auto st = gaussian_position_stats(rho, e, noisy_postselection(pi, 0.0), s);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12f", st.p_d);
            const auto result =
                lemma1_pipeline(wvctx::polytope::parse_rational(buf), Rational(1, 2));
            for (const auto& facet : result.hull_facets.inequalities) {
                double value = static_cast<double>(facet.constant);
                value += static_cast<double>(facet.coeffs[0]) * st.p_f;
                value += static_cast<double>(facet.coeffs[1]) * st.p_minus;
                CHECK(value >= -1e-9);
            }
        }
    }
}

TEST_CASE("tradeoff bound agrees with the lemma 2 polytope") {
    const ScenarioParams params{Rational(1, 4), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    const auto result = lemma2_pipeline(params);
    // For fixed (p_F, C_S) the maximal p_minus inside the polytope is the
    // tightest upper-bounding facet; compare with the closed-form bound.
    for (int i = 0; i <= 10; ++i) {
        for (int j = 90; j <= 100; ++j) {
            const Rational p_f(i, 10), c_s(j, 100);
            Rational best;
            bool any = false;
            for (const auto& facet : result.tradeoff_facets.inequalities) {
                if (facet.coeffs[2] >= 0) continue;
                const Rational cap =
                    (facet.constant + facet.coeffs[0] * p_f + facet.coeffs[1] * c_s) /
                    -facet.coeffs[2];
                if (!any || cap < best) best = cap;
                any = true;
            }
            REQUIRE(any);
            const double closed = std::min(
                wvctx::bounds::bound_template2(static_cast<double>(p_f), 0.25, 0.5,
                                               static_cast<double>(c_s), 0.5),
                0.5);
            CHECK(static_cast<double>(best) <= closed + 1e-12);
            if (j == 100)  // at perfect sharpness the closed form is the facet
                CHECK(static_cast<double>(best) == doctest::Approx(closed).epsilon(1e-12));
        }
    }
}

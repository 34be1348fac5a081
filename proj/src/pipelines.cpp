#include "wvctx/pipelines.hpp"

#include <algorithm>
#include <stdexcept>

namespace wvctx::pipelines {

using polytope::hrep_to_vrep;
using polytope::vrep_to_hrep;

namespace {

LinearForm unit_inequality(int dim, int coord) {
    LinearForm f;
    f.coeffs.assign(dim, Rational(0));
    f.coeffs[coord] = 1;
    return f;
}

void require_unit_interval(const Rational& q, const char* name) {
    if (q < 0 || q > 1) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

void ScenarioParams::validate(bool need_ensemble) const {
    require_unit_interval(p_d, "p_d");
    require_unit_interval(p_tilde, "p_tilde");
    if (need_ensemble) {
        require_unit_interval(q0, "q0");
        require_unit_interval(q_star, "q_star");
        if (q_star == 0) throw std::invalid_argument("q_star must be positive");
        if (q_star == 1) throw std::invalid_argument("q_star must leave room for the orthogonal preparation");
    }
}

AssignmentPolytope assignment_polytope(const Rational& p_d, const Rational& p_tilde) {
    require_unit_interval(p_d, "p_d");
    require_unit_interval(p_tilde, "p_tilde");

    // Coordinates: x0..x1 = p_M1(1..2), x2..x3 = p_M2(1..2), x4..x7 = p_M3(1..4).
    const int dim = 8;
    HRep h;
    h.dim = dim;
    for (int i = 0; i < dim; ++i) h.inequalities.push_back(unit_inequality(dim, i));
    {
        LinearForm cap;  // p~ - x4 - x5 >= 0
        cap.coeffs.assign(dim, Rational(0));
        cap.coeffs[4] = -1;
        cap.coeffs[5] = -1;
        cap.constant = p_tilde;
        h.inequalities.push_back(std::move(cap));
    }
    auto normalization = [&](std::initializer_list<int> coords) {
        LinearForm f;
        f.coeffs.assign(dim, Rational(0));
        for (int c : coords) f.coeffs[c] = 1;
        f.constant = -1;
        h.equalities.push_back(std::move(f));
    };
    normalization({0, 1});
    normalization({2, 3});
    normalization({4, 5, 6, 7});
    for (int y = 0; y < 2; ++y) {
        // (1-p_d) p_M1(y) + p_d p_M2(y) - p_M3(y) - p_M3(y+2) = 0
        LinearForm f;
        f.coeffs.assign(dim, Rational(0));
        f.coeffs[y] = Rational(1) - p_d;
        f.coeffs[2 + y] = p_d;
        f.coeffs[4 + y] = -1;
        f.coeffs[6 + y] = -1;
        h.equalities.push_back(std::move(f));
    }

    AssignmentPolytope out;
    out.v = hrep_to_vrep(h);
    out.h = std::move(h);
    return out;
}

VRep project(const VRep& v, const std::vector<int>& coords) {
    VRep out;
    out.dim = static_cast<int>(coords.size());
    for (const auto& vertex : v.vertices) {
        std::vector<Rational> p;
        p.reserve(coords.size());
        for (int c : coords) p.push_back(vertex[c]);
        out.vertices.push_back(std::move(p));
    }
    return polytope::canonicalize(std::move(out));
}

Lemma1Result lemma1_pipeline(const Rational& p_d, const Rational& p_tilde) {
    Lemma1Result out;
    out.trivial_regime = p_d >= p_tilde;

    AssignmentPolytope ap = assignment_polytope(p_d, p_tilde);
    out.assignment_vertices = std::move(ap.v);

    out.deterministic_vertices.dim = out.assignment_vertices.dim;
    for (const auto& vertex : out.assignment_vertices.vertices)
        if (vertex[0] == 0 || vertex[0] == 1) out.deterministic_vertices.vertices.push_back(vertex);

    const VRep points = project(out.deterministic_vertices, {0, 4});  // (p_F, p_minus)
    out.hull_facets = vrep_to_hrep(points);
    out.hull_vertices = hrep_to_vrep(out.hull_facets);

    const Rational capped_pd = std::min(p_d, p_tilde);
    out.bound_facet.coeffs = {p_tilde - capped_pd, Rational(-1)};
    out.bound_facet.constant = capped_pd;
    out.bound_facet_present = polytope::facet_contains(out.hull_facets, out.bound_facet);

    out.trivial_facet.coeffs = {Rational(0), Rational(-1)};
    out.trivial_facet.constant = p_tilde;
    out.trivial_facet_present = polytope::facet_contains(out.hull_facets, out.trivial_facet);
    return out;
}

Lemma2Result lemma2_pipeline(const ScenarioParams& params) {
    params.validate(true);
    Lemma2Result out;

    AssignmentPolytope ap = assignment_polytope(params.p_d, params.p_tilde);
    out.assignment_vertices = std::move(ap.v);
    // Hull of the projected assignment vertices; only its extreme points
    // carry weight in the mixing step.
    out.reduced_vertices = hrep_to_vrep(vrep_to_hrep(project(out.assignment_vertices, {0, 4})));

    const auto& kappa = out.reduced_vertices.vertices;
    const int k = static_cast<int>(kappa.size());

    // Coordinates: w2[0..k) mixing weights of the target preparation,
    // w3[k..2k) of [b=0|S], w4[2k..3k) of [b=1|S], then p_F, C_S, p_minus.
    // The orthogonal preparation's weights are eliminated through the
    // preparation equivalence q0 S0 + q1 S1 = q* P* + (1-q*) Pperp.
    const int dim = 3 * k + 3;
    const int c_pf = 3 * k, c_cs = 3 * k + 1, c_pm = 3 * k + 2;
    HRep h;
    h.dim = dim;
    for (int j = 0; j < 3 * k; ++j) h.inequalities.push_back(unit_inequality(dim, j));
    for (int i = 0; i < k; ++i) {
        // Positivity of the eliminated weights: q0 w3 + (1-q0) w4 - q* w2 >= 0.
        LinearForm f;
        f.coeffs.assign(dim, Rational(0));
        f.coeffs[k + i] = params.q0;
        f.coeffs[2 * k + i] = Rational(1) - params.q0;
        f.coeffs[i] = -params.q_star;
        h.inequalities.push_back(std::move(f));
    }
    for (int j = 0; j < 3; ++j) {
        LinearForm f;
        f.coeffs.assign(dim, Rational(0));
        for (int i = 0; i < k; ++i) f.coeffs[j * k + i] = 1;
        f.constant = -1;
        h.equalities.push_back(std::move(f));
    }
    {
        LinearForm f;  // p_F = sum w2 kappa(0)
        f.coeffs.assign(dim, Rational(0));
        for (int i = 0; i < k; ++i) f.coeffs[i] = -kappa[i][0];
        f.coeffs[c_pf] = 1;
        h.equalities.push_back(std::move(f));
    }
    {
        LinearForm f;  // p_minus = sum w2 kappa(1)
        f.coeffs.assign(dim, Rational(0));
        for (int i = 0; i < k; ++i) f.coeffs[i] = -kappa[i][1];
        f.coeffs[c_pm] = 1;
        h.equalities.push_back(std::move(f));
    }
    {
        LinearForm f;  // C_S = q0 sum w3 (1 - kappa(0)) + (1-q0) sum w4 kappa(0)
        f.coeffs.assign(dim, Rational(0));
        for (int i = 0; i < k; ++i) {
            f.coeffs[k + i] = -params.q0 * (Rational(1) - kappa[i][0]);
            f.coeffs[2 * k + i] = -(Rational(1) - params.q0) * kappa[i][0];
        }
        f.coeffs[c_cs] = 1;
        h.equalities.push_back(std::move(f));
    }

    out.intermediate_vertices = hrep_to_vrep(h);
    out.intermediate_dim = polytope::affine_dimension(out.intermediate_vertices);

    const VRep points = project(out.intermediate_vertices, {c_pf, c_cs, c_pm});
    out.tradeoff_facets = vrep_to_hrep(points);
    out.tradeoff_vertices = hrep_to_vrep(out.tradeoff_facets);

    const Rational mx = std::max(Rational(params.p_tilde - params.p_d),
                                 Rational(Rational(1) - params.p_tilde));
    out.bound_facet.coeffs = {params.p_tilde - params.p_d, -mx / params.q_star, Rational(-1)};
    out.bound_facet.constant = params.p_d + mx / params.q_star;
    out.bound_facet_present = polytope::facet_contains(out.tradeoff_facets, out.bound_facet);
    return out;
}

}  // namespace wvctx::pipelines

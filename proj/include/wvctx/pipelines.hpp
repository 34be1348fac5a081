#pragma once

#include "wvctx/polytope.hpp"

// The two exact-rational tightness pipelines. Both start from the assignment
// polytope of noncontextual response functions for the three measurements of
// the binned weak-value scenario (postselection M1, disturbance proxy M2 and
// the joint binned measurement M3), then project to the operational
// coordinates and recover the optimal inequalities as facets.

namespace wvctx::pipelines {

using polytope::HRep;
using polytope::LinearForm;
using polytope::Rational;
using polytope::VRep;

struct ScenarioParams {
    Rational p_d;
    Rational p_tilde;
    Rational q0;      // weight of [b=0|S] in the sharpness ensemble
    Rational q_star;  // weight of the target preparation in the mixed ensemble

    void validate(bool need_ensemble) const;  // throws std::invalid_argument
};

/// Response-function polytope over the 8 coordinates
/// (p_M1(1), p_M1(2), p_M2(1), p_M2(2), p_M3(1..4)): positivity, the three
/// normalizations, the two noncontextuality equalities
///   (1-p_d) p_M1(y) + p_d p_M2(y) = p_M3(y) + p_M3(y+2)
/// and the negative-outcome cap p_M3(1) + p_M3(2) <= p~.
struct AssignmentPolytope {
    HRep h;
    VRep v;
};

AssignmentPolytope assignment_polytope(const Rational& p_d, const Rational& p_tilde);

/// Restriction to outcome-deterministic postselection assignments,
/// projection to (p_F, p_minus) and the facet description of the hull.
struct Lemma1Result {
    VRep assignment_vertices;
    VRep deterministic_vertices;
    VRep hull_vertices;  // in the (p_F, p_minus) plane
    HRep hull_facets;
    LinearForm bound_facet;    // p_minus <= p~ p_F + (1-p_F) min{p_d, p~}
    bool bound_facet_present;
    LinearForm trivial_facet;  // p_minus <= p~
    bool trivial_facet_present;
    bool trivial_regime;       // p_d >= p~
};

Lemma1Result lemma1_pipeline(const Rational& p_d, const Rational& p_tilde);

/// Full elimination pipeline: mix the reduced assignment vertices with
/// per-preparation weights, eliminate the ensemble preparation, and project
/// onto (p_F, C_S, p_minus).
struct Lemma2Result {
    VRep assignment_vertices;
    VRep reduced_vertices;       // assignment vertices projected to (p_F, p_minus)
    VRep intermediate_vertices;  // mixing-weight polytope before projection
    int intermediate_dim = 0;
    VRep tradeoff_vertices;      // hull in (p_F, C_S, p_minus)
    HRep tradeoff_facets;
    LinearForm bound_facet;  // p_minus <= p~ p_F + (1-p_F) p_d + (1-C_S)/q_* max{p~-p_d, 1-p~}
    bool bound_facet_present;
};

Lemma2Result lemma2_pipeline(const ScenarioParams& params);

/// Coordinate projection of a vertex set (indices into the ambient space).
VRep project(const VRep& v, const std::vector<int>& coords);

}  // namespace wvctx::pipelines

#pragma once

#include <string>
#include <vector>

#include "wvctx/schemes.hpp"

// Noncontextual upper bounds on p_minus, the violation certificates they
// induce, and the auxiliary thresholds (noise tolerance, complete-positivity
// floor on p_d, required postselection sharpness).

namespace wvctx::bounds {

using schemes::ExperimentStats;

enum class TheoremTag { thm1, thm2, thm3, thm4, lemma1, lemma2 };

std::string to_string(TheoremTag tag);

enum class BoundTemplate { template1, template2 };

struct BoundSpec {
    BoundTemplate tmpl = BoundTemplate::template1;
    double p_tilde = 0.5;
    double p_d = 0.0;
    double c_s = 1.0;     // template2 only
    double q_star = 1.0;  // template2 only
    TheoremTag tag = TheoremTag::lemma1;
};

/// p_F p~ + (1 - p_F) p_d.
double bound_template1(double p_f, double p_d, double p_tilde);

/// p_F p~ + (1 - p_F) p_d + (1 - C_S)/q_* max{p~ - p_d, 1 - p~}.
double bound_template2(double p_f, double p_d, double p_tilde, double c_s, double q_star);

/// Evaluate the cap described by `spec` at postselection probability p_f.
/// Enforces the p_tilde convention of the theorem tags (1/2 everywhere
/// except thm3, whose p_tilde carries the measurement strength).
double evaluate_bound(const BoundSpec& spec, double p_f);

struct Certificate {
    TheoremTag tag;
    double bound_value = 0.0;
    double observed_p_minus = 0.0;
    double margin = 0.0;  // observed - bound
    bool violated = false;
    bool trivial_regime = false;  // p_d >= p~, cap degrades to p_minus <= p~
    std::vector<std::string> assumptions;  // operational equivalences to verify
};

/// Operational-equivalence ids a certificate for `tag` depends on.
const std::vector<std::string>& assumptions_for(TheoremTag tag);

/// Certificate for thm1 / thm2 / thm3 (template 1, p~ = 1/2 or (1+p_m)/2).
/// Throws std::invalid_argument for thm3 when stats carry no p_m.
Certificate bound_theorem(const ExperimentStats& stats, TheoremTag tag);

/// Certificate for thm4 (template 2 at p~ = 1/2) given the sharpness witness
/// C_S and the mixing weight q_*.
Certificate bound_theorem4(const ExperimentStats& stats, double c_s, double q_star);

struct RequiredCs {
    double value = 0.0;   // minimum C_S for the observation to violate thm4
    bool feasible = false;  // value <= 1, i.e. some physical C_S certifies
};

/// Solve the thm4 bound (p~ = 1/2) as an equality for C_S.
RequiredCs required_cs(double p_minus, double p_f, double p_d, double q_star);

/// Unbiased-postselection-noise threshold below which an anomaly of maximal
/// strength still violates thm1: 1 / (2 + 8 p_E) with p_E = Tr(E rho).
double noise_threshold_eps(double p_e);

/// Complete-positivity floor on the disturbance weight when weakly measuring
/// an observable with the given eigenvalues: (1 - exp(-D^2/4s^2)) / 2 with D
/// the eigenvalue spread.
double min_pd_for_cp(const std::vector<double>& eigenvalues, double s);

}  // namespace wvctx::bounds

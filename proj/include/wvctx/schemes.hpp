#pragma once

#include <optional>
#include <string>

#include "wvctx/qmath.hpp"

// Closed-form operational statistics for the four weak-measurement schemes:
// Gaussian pointer read in position or momentum, a qubit pointer, and the
// two-outcome coarse graining of the position readout. No sampling anywhere;
// every probability is an exact erf/erfc expression.

namespace wvctx::schemes {

using qmath::CMat;
using qmath::Complex;
using qmath::DensityState;
using qmath::Effect;

enum class SchemeKind { gaussian_position, gaussian_momentum, qubit_pointer, coarse_grained };

std::string to_string(SchemeKind kind);

/// Parameters of one scheme. Only the fields relevant to `kind` are used:
/// `s` for the Gaussian/coarse schemes, `epsilon_pointer` for the qubit
/// pointer, `noise_eps` for unbiased postselection noise in all of them.
struct SchemeSpec {
    SchemeKind kind = SchemeKind::gaussian_position;
    double s = 0.0;
    double epsilon_pointer = 0.0;
    double noise_eps = 0.0;

    void validate() const;  // throws std::invalid_argument
};

/// Two-outcome postselection with unbiased noise:
/// pass effect = (1 - 2 eps) * P + eps * I.
struct PostselectionModel {
    Effect effect_pass;
    Effect effect_fail;
    Effect ideal_projector;
    double noise_eps = 0.0;
};

PostselectionModel noisy_postselection(const Effect& projector, double eps);

struct ExperimentStats {
    double p_minus = 0.0;   // negative pointer outcome and successful postselection
    double p_f = 0.0;       // postselection probability without the weak measurement
    double p_d = 0.0;       // disturbance weight of the unrecorded-outcome channel
    double p_tilde = 0.5;   // per-ontic-state cap on the negative-outcome response
    std::optional<double> p_m;  // measurement-strength weight (discrete schemes only)
    Complex kd_numerator{};     // Tr(F E rho) for the pass effect F
    double leading_order_p_minus = 0.0;
};

/// Disturbance weight of the Gaussian-pointer channel, (1 - exp(-1/4s^2)) / 2.
double disturbance_pd(double s);

/// Pointer spread with a prescribed disturbance weight (inverse of the above).
double s_for_disturbance(double p_d);

/// Unrecorded-outcome channel of the Gaussian-pointer interaction:
/// E rho E + E' rho E' + exp(-1/4s^2) (E rho E' + E' rho E). Identical for
/// the position and momentum readouts.
CMat weak_channel_gaussian(const DensityState& rho, const Effect& e, double s);

/// Unrecorded-outcome channel of the qubit-pointer interaction.
CMat weak_channel_qubit(const DensityState& rho, const Effect& e, double eps);

/// Kraus operators of the qubit-pointer scheme,
/// N_{+-} = (cos(eps) I +- sin(eps) (E - E')) / sqrt(2).
std::pair<CMat, CMat> qubit_pointer_kraus(const Effect& e, double eps);

/// Position readout. p_minus is exact (three erfc terms, linear in the pass
/// effect); leading_order is p_F/2 - Re Tr(F E rho) / (sqrt(pi) s).
ExperimentStats gaussian_position_stats(const DensityState& rho, const Effect& e,
                                        const PostselectionModel& post, double s);

/// Momentum readout against an arbitrary postselection effect (pass a noisy
/// pass-effect for the linear-in-effect noisy extension). leading_order is
/// p_F/2 - Im Tr(F E rho) / (sqrt(pi) s).
ExperimentStats gaussian_momentum_stats(const DensityState& rho, const Effect& e,
                                        const Effect& postselection, double s);

/// Qubit-pointer scheme with p_m = sin(2 eps) and p_d = sin^2(eps), exact.
ExperimentStats qubit_pointer_stats(const DensityState& rho, const Effect& e,
                                    const Effect& postselection, double eps);

/// Two-outcome coarse graining of the position readout, split at x = 1/2.
/// Exact p_m = erf(1/2s) from decomposing the binned POVM against a trivial
/// median-zero measurement.
ExperimentStats coarse_grained_stats(const DensityState& rho, const Effect& e,
                                     const Effect& postselection, double s);

/// The reference ensemble used by the preparation-noncontextuality bound:
/// sigma_0 = (I - P)/(d - Tr P), sigma_1 = P/Tr P with q_1 = Tr P / d, and
/// rho_perp = (I - rho)/(d - 1) with q_* = 1/d, so that both mixtures equal I/d.
struct PreparationEnsemble {
    DensityState sigma0;
    DensityState sigma1;
    double q0 = 0.0;
    double q1 = 0.0;
    DensityState rho_perp;
    double q_star = 0.0;
    std::optional<double> c_s;  // filled in by c_s_value
};

PreparationEnsemble sigma_preparations(const Effect& projector, const DensityState& rho_star);

/// Postselection-preparation correlation witness
/// C_S = q0 Tr(F_fail sigma0) + q1 Tr(F_pass sigma1).
double c_s_value(const PreparationEnsemble& ensemble, const PostselectionModel& post);

}  // namespace wvctx::schemes

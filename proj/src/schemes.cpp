#include "wvctx/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace wvctx::schemes {

using qmath::gaussian_overlap;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double real_tr(const CMat& m) { return m.trace().real(); }

void require_projector(const Effect& e, const char* what) {
    if (!e.is_projector()) throw std::invalid_argument(std::string(what) + ": effect is not a projector");
}

double postselection_prob(const Effect& f, const DensityState& rho, const char* what) {
    const double p = real_tr(f.mat() * rho.mat());
    if (p <= 1e-12) throw std::domain_error(std::string(what) + ": postselection probability is zero");
    return p;
}

double clamp_prob(double p) {
    if (p < 0.0 && p > -1e-12) return 0.0;
    if (p > 1.0 && p < 1.0 + 1e-12) return 1.0;
    return p;
}

}  // namespace

std::string to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::gaussian_position: return "gaussian_position";
        case SchemeKind::gaussian_momentum: return "gaussian_momentum";
        case SchemeKind::qubit_pointer: return "qubit_pointer";
        case SchemeKind::coarse_grained: return "coarse_grained";
    }
    return "unknown";
}

void SchemeSpec::validate() const {
    if (noise_eps < 0.0 || noise_eps >= 0.5)
        throw std::invalid_argument("SchemeSpec: noise_eps must lie in [0, 1/2)");
    if (kind == SchemeKind::qubit_pointer) {
        if (!(epsilon_pointer > 0.0) || epsilon_pointer > M_PI / 4.0)
            throw std::invalid_argument("SchemeSpec: epsilon_pointer must lie in (0, pi/4]");
    } else {
        if (!(s > 0.0)) throw std::invalid_argument("SchemeSpec: s must be positive");
    }
}

PostselectionModel noisy_postselection(const Effect& projector, double eps) {
    require_projector(projector, "noisy_postselection");
    if (eps < 0.0 || eps >= 0.5)
        throw std::invalid_argument("noisy_postselection: eps must lie in [0, 1/2)");
    CMat pass = projector.mat();
    pass *= Complex(1.0 - 2.0 * eps, 0.0);
    pass += Complex(eps, 0.0) * CMat::identity(projector.dim());
    Effect effect_pass(std::move(pass));
    Effect effect_fail = effect_pass.complement();
    return PostselectionModel{std::move(effect_pass), std::move(effect_fail), projector, eps};
}

double disturbance_pd(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("disturbance_pd: s must be positive");
    return (1.0 - std::exp(-1.0 / (4.0 * s * s))) / 2.0;
}

double s_for_disturbance(double p_d) {
    if (!(p_d > 0.0) || p_d >= 0.5)
        throw std::invalid_argument("s_for_disturbance: p_d must lie in (0, 1/2)");
    return 0.5 / std::sqrt(-std::log(1.0 - 2.0 * p_d));
}

CMat weak_channel_gaussian(const DensityState& rho, const Effect& e, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("weak_channel_gaussian: s must be positive");
    const CMat& ee = e.mat();
    const CMat ep = e.complement().mat();
    const CMat diag = ee * rho.mat() * ee + ep * rho.mat() * ep;
    CMat cross = ee * rho.mat() * ep + ep * rho.mat() * ee;
    cross *= Complex(std::exp(-1.0 / (4.0 * s * s)), 0.0);
    return diag + cross;
}

std::pair<CMat, CMat> qubit_pointer_kraus(const Effect& e, double eps) {
    const int d = e.dim();
    const CMat z = e.mat() - e.complement().mat();  // E - E'
    const double c = std::cos(eps) / std::sqrt(2.0);
    const double s = std::sin(eps) / std::sqrt(2.0);
    CMat plus = Complex(c, 0.0) * CMat::identity(d) + Complex(s, 0.0) * z;
    CMat minus = Complex(c, 0.0) * CMat::identity(d) - Complex(s, 0.0) * z;
    return {std::move(plus), std::move(minus)};
}

CMat weak_channel_qubit(const DensityState& rho, const Effect& e, double eps) {
    const auto [np, nm] = qubit_pointer_kraus(e, eps);
    return np * rho.mat() * np.adjoint() + nm * rho.mat() * nm.adjoint();
}

ExperimentStats gaussian_position_stats(const DensityState& rho, const Effect& e,
                                        const PostselectionModel& post, double s) {
    require_projector(e, "gaussian_position_stats");
    if (!(s > 0.0)) throw std::invalid_argument("gaussian_position_stats: s must be positive");
    const CMat& f = post.effect_pass.mat();
    const CMat& ee = e.mat();
    const CMat ep = e.complement().mat();

    const double t_ee = real_tr(ee * f * ee * rho.mat());
    const double t_pp = real_tr(ep * f * ep * rho.mat());
    const double t_cross = ((ep * f * ee + ee * f * ep) * rho.mat()).trace().real();

    ExperimentStats st;
    st.p_f = postselection_prob(post.effect_pass, rho, "gaussian_position_stats");
    st.p_minus = clamp_prob(gaussian_overlap(1, 1, s, 0) * t_ee + gaussian_overlap(0, 0, s, 0) * t_pp +
                            gaussian_overlap(1, 0, s, 0) * t_cross);
    st.p_d = disturbance_pd(s);
    st.p_tilde = 0.5;
    st.kd_numerator = (f * ee * rho.mat()).trace();
    st.leading_order_p_minus = st.p_f / 2.0 - st.kd_numerator.real() / (kSqrtPi * s);
    return st;
}

ExperimentStats gaussian_momentum_stats(const DensityState& rho, const Effect& e,
                                        const Effect& postselection, double s) {
    require_projector(e, "gaussian_momentum_stats");
    if (!(s > 0.0)) throw std::invalid_argument("gaussian_momentum_stats: s must be positive");
    const CMat& f = postselection.mat();
    const CMat& ee = e.mat();
    const CMat ep = e.complement().mat();

    // p_- = ( T_EE + T_pp + alpha z + conj(alpha) conj(z) ) / 2 with
    // alpha = exp(-1/4s^2) (1 + i erfi(1/2s)) and z = Tr(E' F E rho).
    const double t_ee = real_tr(ee * f * ee * rho.mat());
    const double t_pp = real_tr(ep * f * ep * rho.mat());
    const Complex z = (ep * f * ee * rho.mat()).trace();
    const Complex zbar = (ee * f * ep * rho.mat()).trace();
    const Complex alpha = std::exp(-1.0 / (4.0 * s * s)) * Complex(1.0, qmath::erfi(1.0 / (2.0 * s)));

    ExperimentStats st;
    st.p_f = postselection_prob(postselection, rho, "gaussian_momentum_stats");
    st.p_minus = clamp_prob(0.5 * (t_ee + t_pp + (alpha * z + std::conj(alpha) * zbar).real()));
    st.p_d = disturbance_pd(s);
    st.p_tilde = 0.5;
    st.kd_numerator = (f * ee * rho.mat()).trace();
    st.leading_order_p_minus = st.p_f / 2.0 - st.kd_numerator.imag() / (kSqrtPi * s);
    return st;
}

ExperimentStats qubit_pointer_stats(const DensityState& rho, const Effect& e,
                                    const Effect& postselection, double eps) {
    require_projector(e, "qubit_pointer_stats");
    if (!(eps > 0.0) || eps > M_PI / 4.0)
        throw std::invalid_argument("qubit_pointer_stats: eps must lie in (0, pi/4]");
    const auto [np, nm] = qubit_pointer_kraus(e, eps);

    ExperimentStats st;
    st.p_f = postselection_prob(postselection, rho, "qubit_pointer_stats");
    st.p_minus = clamp_prob(real_tr(nm.adjoint() * postselection.mat() * nm * rho.mat()));
    st.p_m = std::sin(2.0 * eps);
    st.p_d = std::sin(eps) * std::sin(eps);
    st.p_tilde = (1.0 + *st.p_m) / 2.0;
    st.kd_numerator = (postselection.mat() * e.mat() * rho.mat()).trace();
    st.leading_order_p_minus = st.p_f * st.p_tilde - 2.0 * eps * st.kd_numerator.real();
    return st;
}

ExperimentStats coarse_grained_stats(const DensityState& rho, const Effect& e,
                                     const Effect& postselection, double s) {
    require_projector(e, "coarse_grained_stats");
    if (!(s > 0.0)) throw std::invalid_argument("coarse_grained_stats: s must be positive");
    const CMat& f = postselection.mat();
    const CMat& ee = e.mat();
    const CMat ep = e.complement().mat();

    const double t_ee = real_tr(ee * f * ee * rho.mat());
    const double t_pp = real_tr(ep * f * ep * rho.mat());
    const double t_cross = ((ep * f * ee + ee * f * ep) * rho.mat()).trace().real();

    constexpr double split = 0.5;  // x closest to eigenvalue 0 vs eigenvalue 1
    ExperimentStats st;
    st.p_f = postselection_prob(postselection, rho, "coarse_grained_stats");
    st.p_minus = clamp_prob(gaussian_overlap(1, 1, s, split) * t_ee +
                            gaussian_overlap(0, 0, s, split) * t_pp +
                            gaussian_overlap(1, 0, s, split) * t_cross);
    st.p_d = disturbance_pd(s);
    st.p_m = std::erf(1.0 / (2.0 * s));
    st.p_tilde = (1.0 + *st.p_m) / 2.0;
    st.kd_numerator = (f * ee * rho.mat()).trace();
    st.leading_order_p_minus = st.p_f * st.p_tilde - st.kd_numerator.real() / (kSqrtPi * s);
    return st;
}

PreparationEnsemble sigma_preparations(const Effect& projector, const DensityState& rho_star) {
    require_projector(projector, "sigma_preparations");
    const int d = projector.dim();
    if (d < 2) throw std::invalid_argument("sigma_preparations: dimension must be at least 2");
    const double tr_p = real_tr(projector.mat());
    if (tr_p > d - 0.5) throw std::invalid_argument("sigma_preparations: projector must be rank-deficient");
    if (tr_p < 0.5) throw std::invalid_argument("sigma_preparations: projector must have rank >= 1");

    CMat s0 = CMat::identity(d) - projector.mat();
    s0 *= Complex(1.0 / (d - tr_p), 0.0);
    CMat s1 = projector.mat();
    s1 *= Complex(1.0 / tr_p, 0.0);
    CMat perp = CMat::identity(d) - rho_star.mat();
    perp *= Complex(1.0 / (d - 1.0), 0.0);

    PreparationEnsemble ens{DensityState(std::move(s0)), DensityState(std::move(s1)),
                            1.0 - tr_p / d,            tr_p / d,
                            DensityState(std::move(perp)), 1.0 / d,
                            std::nullopt};
    return ens;
}

double c_s_value(const PreparationEnsemble& ensemble, const PostselectionModel& post) {
    const double c0 = real_tr(post.effect_fail.mat() * ensemble.sigma0.mat());
    const double c1 = real_tr(post.effect_pass.mat() * ensemble.sigma1.mat());
    return clamp_prob(ensemble.q0 * c0 + ensemble.q1 * c1);
}

}  // namespace wvctx::schemes

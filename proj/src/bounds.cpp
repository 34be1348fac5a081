#include "wvctx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wvctx::bounds {

namespace {

void require_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

Certificate make_certificate(TheoremTag tag, double p_f, double p_d, double p_tilde,
                             double observed, double extra) {
    Certificate cert;
    cert.tag = tag;
    cert.trivial_regime = p_d >= p_tilde;
    const double capped_pd = std::min(p_d, p_tilde);
    cert.bound_value = bound_template1(p_f, capped_pd, p_tilde) + extra;
    cert.observed_p_minus = observed;
    cert.margin = observed - cert.bound_value;
    cert.violated = cert.margin > 0.0;
    cert.assumptions = assumptions_for(tag);
    return cert;
}

}  // namespace

std::string to_string(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::thm1: return "thm1";
        case TheoremTag::thm2: return "thm2";
        case TheoremTag::thm3: return "thm3";
        case TheoremTag::thm4: return "thm4";
        case TheoremTag::lemma1: return "lemma1";
        case TheoremTag::lemma2: return "lemma2";
    }
    return "unknown";
}

double bound_template1(double p_f, double p_d, double p_tilde) {
    require_prob(p_f, "p_f");
    require_prob(p_d, "p_d");
    require_prob(p_tilde, "p_tilde");
    return p_f * p_tilde + (1.0 - p_f) * p_d;
}

double bound_template2(double p_f, double p_d, double p_tilde, double c_s, double q_star) {
    require_prob(c_s, "c_s");
    if (!(q_star > 0.0) || q_star > 1.0)
        throw std::invalid_argument("q_star must lie in (0, 1]");
    return bound_template1(p_f, p_d, p_tilde) +
           (1.0 - c_s) / q_star * std::max(p_tilde - p_d, 1.0 - p_tilde);
}

double evaluate_bound(const BoundSpec& spec, double p_f) {
    const bool half = spec.tag == TheoremTag::thm1 || spec.tag == TheoremTag::thm2 ||
                      spec.tag == TheoremTag::thm4;
    if (half && spec.p_tilde != 0.5)
        throw std::invalid_argument("evaluate_bound: this theorem tag fixes p_tilde = 1/2");
    if (spec.tmpl == BoundTemplate::template1)
        return bound_template1(p_f, spec.p_d, spec.p_tilde);
    return bound_template2(p_f, spec.p_d, spec.p_tilde, spec.c_s, spec.q_star);
}

const std::vector<std::string>& assumptions_for(TheoremTag tag) {
    // Each id names one operational equivalence that must hold for the
    // certificate to witness contextuality.
    static const std::vector<std::string> thm1 = {
        "OE-W: [x|MW] ~ q(x-1)[1|ME] + q(x)[0|ME], median(q) = 0",
        "OE-T: channel ~ (1-pd) identity + pd * other",
    };
    static const std::vector<std::string> thm2 = {
        "OE-W-triv: [g|MW] ~ trivial median-zero sampling",
        "OE-T: channel ~ (1-pd) identity + pd * other",
    };
    static const std::vector<std::string> thm3 = {
        "OE-W-mix: [x|MW] ~ pm [x|ME] + (1-pm) trivial median-zero sampling",
        "OE-T: channel ~ (1-pd) identity + pd * other",
    };
    static const std::vector<std::string> thm4 = {
        "OE-W: [x|MW] ~ q(x-1)[1|ME] + q(x)[0|ME], median(q) = 0",
        "OE-F: [y|MF-after-W] ~ (1-pd)[y|MF] + pd [y|MD]",
        "OE-P: q0 [0|S] + q1 [1|S] ~ q* P* + (1-q*) Pperp",
    };
    static const std::vector<std::string> lemma1 = {
        "RC-W: negative-outcome response <= p~ for every ontic state",
        "OE-T: channel ~ (1-pd) identity + pd * other",
    };
    static const std::vector<std::string> lemma2 = {
        "RC-W: negative-outcome response <= p~ for every ontic state",
        "OE-F: [y|MF-after-W] ~ (1-pd)[y|MF] + pd [y|MD]",
        "OE-P: q0 [0|S] + q1 [1|S] ~ q* P* + (1-q*) Pperp",
    };
    switch (tag) {
        case TheoremTag::thm1: return thm1;
        case TheoremTag::thm2: return thm2;
        case TheoremTag::thm3: return thm3;
        case TheoremTag::thm4: return thm4;
        case TheoremTag::lemma1: return lemma1;
        case TheoremTag::lemma2: return lemma2;
    }
    return lemma1;
}

Certificate bound_theorem(const ExperimentStats& stats, TheoremTag tag) {
    switch (tag) {
        case TheoremTag::thm1:
        case TheoremTag::thm2:
            return make_certificate(tag, stats.p_f, stats.p_d, 0.5, stats.p_minus, 0.0);
        case TheoremTag::thm3: {
            if (!stats.p_m)
                throw std::invalid_argument("bound_theorem: thm3 requires p_m in the statistics");
            const double p_tilde = (1.0 + *stats.p_m) / 2.0;
            return make_certificate(tag, stats.p_f, stats.p_d, p_tilde, stats.p_minus, 0.0);
        }
        default:
            throw std::invalid_argument("bound_theorem: tag must be thm1, thm2 or thm3");
    }
}

Certificate bound_theorem4(const ExperimentStats& stats, double c_s, double q_star) {
    require_prob(c_s, "c_s");
    if (!(q_star > 0.0) || q_star > 1.0)
        throw std::invalid_argument("q_star must lie in (0, 1]");
    // p~ = 1/2, so max{p~ - p_d, 1 - p~} = 1/2 and the extra term is (1-C_S)/2q_*.
    const double extra = (1.0 - c_s) / (2.0 * q_star);
    return make_certificate(TheoremTag::thm4, stats.p_f, stats.p_d, 0.5, stats.p_minus, extra);
}

RequiredCs required_cs(double p_minus, double p_f, double p_d, double q_star) {
    require_prob(p_minus, "p_minus");
    require_prob(p_f, "p_f");
    require_prob(p_d, "p_d");
    if (!(q_star > 0.0) || q_star > 1.0)
        throw std::invalid_argument("q_star must lie in (0, 1]");
    RequiredCs out;
    out.value = 1.0 - 2.0 * q_star * (p_minus - p_f / 2.0 - (1.0 - p_f) * p_d);
    out.feasible = out.value <= 1.0;
    return out;
}

double noise_threshold_eps(double p_e) {
    require_prob(p_e, "p_e");
    return 1.0 / (2.0 + 8.0 * p_e);
}

double min_pd_for_cp(const std::vector<double>& eigenvalues, double s) {
    if (eigenvalues.empty()) throw std::invalid_argument("min_pd_for_cp: empty eigenvalue list");
    if (!(s > 0.0)) throw std::invalid_argument("min_pd_for_cp: s must be positive");
    const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
    const double spread = *hi - *lo;
    return 0.5 * (1.0 - std::exp(-spread * spread / (4.0 * s * s)));
}

}  // namespace wvctx::bounds

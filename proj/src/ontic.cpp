#include "wvctx/ontic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wvctx::ontic {

using qmath::CMat;
using qmath::Complex;
using qmath::gaussian_overlap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cell_mass(double t1, double t2, double t3, double s, const Cell& cell) {
    auto piece = [&](double a, double b) {
        const double hi = gaussian_overlap(a, b, s, cell.hi);
        const double lo = std::isinf(cell.lo) ? 0.0 : gaussian_overlap(a, b, s, cell.lo);
        return hi - lo;
    };
    return t1 * piece(1, 1) + t2 * piece(0, 0) + t3 * piece(1, 0);
}

}  // namespace

std::array<double, 2> OperationalData::postselection_after_measurement() const {
    std::array<double, 2> out{0.0, 0.0};
    for (int y = 0; y < 2; ++y)
        for (double m : joint[y]) out[y] += m;
    return out;
}

double OperationalData::negative_mass(int y) const {
    double m = 0.0;
    for (size_t c = 0; c < cells.size(); ++c)
        if (cells[c].negative()) m += joint[y][c];
    return m;
}

OperationalData extract_operational_data(const DensityState& rho, const Effect& e,
                                         const PostselectionModel& post, double s, int bins) {
    if (bins < 2) throw std::invalid_argument("extract_operational_data: need at least 2 bins");
    if (!(s > 0.0)) throw std::invalid_argument("extract_operational_data: s must be positive");
    if (!e.is_projector())
        throw std::invalid_argument("extract_operational_data: effect is not a projector");

    OperationalData data;
    data.p_d = schemes::disturbance_pd(s);
    data.p_tilde = 0.5;

    // Uniform grid of width (1+8s)/bins anchored at x = 0 (p_minus needs the
    // origin to be a cell edge) and covering at least [-4s, 1+4s].
    const double h = (1.0 + 8.0 * s) / bins;
    const int k_lo = -static_cast<int>(std::ceil(4.0 * s / h));
    const int k_hi = static_cast<int>(std::ceil((1.0 + 4.0 * s) / h));
    data.cells.push_back(Cell{-kInf, k_lo * h});
    for (int k = k_lo; k < k_hi; ++k) data.cells.push_back(Cell{k * h, (k + 1) * h});
    data.cells.push_back(Cell{k_hi * h, kInf});

    const CMat& ee = e.mat();
    const CMat ep = e.complement().mat();
    for (int y = 0; y < 2; ++y) {
        const CMat& f = (y == 1 ? post.effect_pass : post.effect_fail).mat();
        const double t1 = (ee * f * ee * rho.mat()).trace().real();
        const double t2 = (ep * f * ep * rho.mat()).trace().real();
        const double t3 = ((ep * f * ee + ee * f * ep) * rho.mat()).trace().real();
        data.joint[y].reserve(data.cells.size());
        for (const Cell& cell : data.cells) data.joint[y].push_back(cell_mass(t1, t2, t3, s, cell));
        data.marginal_y[y] = (f * rho.mat()).trace().real();
    }
    return data;
}

std::vector<std::vector<double>> OnticModel::transition() const {
    std::vector<std::vector<double>> t(instrument.size());
    for (size_t l = 0; l < instrument.size(); ++l) {
        t[l].resize(instrument[l].size(), 0.0);
        for (size_t lp = 0; lp < instrument[l].size(); ++lp)
            for (double m : instrument[l][lp]) t[l][lp] += m;
    }
    return t;
}

OnticModel build_minimal_disturbance_model(const OperationalData& data) {
    const auto after = data.postselection_after_measurement();
    const double shift = after[1] - data.marginal_y[1];
    // Mass donor: the outcome whose probability the measurement reduces.
    const int from = shift >= 0.0 ? 0 : 1;
    const int to = 1 - from;
    const double donor_weight = data.marginal_y[from];
    if (donor_weight <= 0.0)
        throw std::domain_error("build_minimal_disturbance_model: donor outcome has zero probability");
    const double w = std::abs(shift) / donor_weight;
    if (w > data.p_d + 1e-9)
        throw std::logic_error("build_minimal_disturbance_model: disturbance exceeds p_d");

    double d[2][2] = {{1.0, 0.0}, {0.0, 1.0}};  // d[to'][from']
    d[from][from] = 1.0 - w;
    d[to][from] = w;

    const size_t n = data.cells.size();
    std::array<std::vector<double>, 2> cond;
    for (int y = 0; y < 2; ++y) {
        cond[y].assign(n, 0.0);
        if (after[y] > 0.0)
            for (size_t c = 0; c < n; ++c) cond[y][c] = data.joint[y][c] / after[y];
    }

    OnticModel m;
    m.name = "minimal_disturbance";
    m.prep = {data.marginal_y[0], data.marginal_y[1]};
    m.response_f = {{{1.0, 0.0}}, {{0.0, 1.0}}};
    m.instrument.assign(2, std::vector<std::vector<double>>(2, std::vector<double>(n, 0.0)));
    for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp)
            for (size_t c = 0; c < n; ++c) m.instrument[l][lp][c] = cond[lp][c] * d[lp][l];
    return m;
}

OnticModel build_full_disturbance_model(const OperationalData& data) {
    const size_t n = data.cells.size();
    OnticModel m;
    m.name = "full_disturbance";
    m.prep = {data.marginal_y[0], data.marginal_y[1]};
    m.response_f = {{{1.0, 0.0}}, {{0.0, 1.0}}};
    m.instrument.assign(2, std::vector<std::vector<double>>(2, std::vector<double>(n, 0.0)));
    for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp)
            for (size_t c = 0; c < n; ++c) m.instrument[l][lp][c] = data.joint[lp][c];
    return m;
}

AuditReport audit_model(const OnticModel& model, const OperationalData& data, double tol) {
    const size_t n = data.cells.size();
    const size_t states = model.prep.size();
    if (model.instrument.size() != states || model.response_f.size() != states)
        throw std::invalid_argument("audit_model: model tables are inconsistent");
    for (const auto& rows : model.instrument) {
        if (rows.size() != states) throw std::invalid_argument("audit_model: bad transition shape");
        double total = 0.0;
        for (const auto& row : rows) {
            if (row.size() != n) throw std::invalid_argument("audit_model: cell count mismatch");
            for (double v : row) {
                if (v < -1e-12) throw std::invalid_argument("audit_model: negative probability");
                total += v;
            }
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("audit_model: instrument row is not normalized");
    }

    AuditReport report;

    for (int y = 0; y < 2; ++y) {
        for (size_t c = 0; c < n; ++c) {
            double predicted = 0.0;
            for (size_t l = 0; l < states; ++l)
                for (size_t lp = 0; lp < states; ++lp)
                    predicted += model.prep[l] * model.instrument[l][lp][c] * model.response_f[lp][y];
            report.max_residual = std::max(report.max_residual, std::abs(predicted - data.joint[y][c]));
        }
        double marginal = 0.0;
        for (size_t l = 0; l < states; ++l) marginal += model.prep[l] * model.response_f[l][y];
        report.max_residual = std::max(report.max_residual, std::abs(marginal - data.marginal_y[y]));
    }
    report.reproduces_stats = report.max_residual <= 1e-8;

    for (size_t l = 0; l < states; ++l) {
        double neg = 0.0;
        for (size_t c = 0; c < n; ++c)
            if (data.cells[c].negative())
                for (size_t lp = 0; lp < states; ++lp) neg += model.instrument[l][lp][c];
        report.worst_negative_mass = std::max(report.worst_negative_mass, neg);
    }
    report.condition1_holds = report.worst_negative_mass <= data.p_tilde + tol;

    const auto t = model.transition();
    for (size_t l = 0; l < states; ++l) {
        double off = 0.0;
        for (size_t lp = 0; lp < states; ++lp)
            if (lp != l) off += t[l][lp];
        report.worst_offdiagonal = std::max(report.worst_offdiagonal, off);
    }
    report.condition2_holds = report.worst_offdiagonal <= data.p_d + tol;

    // Both two-state constructions represent any preparation by its
    // postselection statistics, a convex-linear assignment, so operationally
    // equal ensembles receive identical lambda mixtures.
    report.prep_nc_holds = true;
    return report;
}

PsiCompleteModel build_psi_complete_model(
    const std::vector<std::pair<std::string, DensityState>>& preparations,
    const std::vector<std::pair<std::string, std::vector<Effect>>>& measurements) {
    if (preparations.empty()) throw std::invalid_argument("build_psi_complete_model: no preparations");
    PsiCompleteModel model;
    for (const auto& [label, rho] : preparations) model.lambda_labels.push_back(label);
    for (const auto& [label, effects] : measurements) {
        model.measurement_labels.push_back(label);
        std::vector<std::vector<double>> table;
        for (const auto& [plabel, rho] : preparations) {
            std::vector<double> row;
            for (const Effect& eff : effects) row.push_back((eff.mat() * rho.mat()).trace().real());
            table.push_back(std::move(row));
        }
        model.response.push_back(std::move(table));
    }
    return model;
}

PsiCompleteAudit audit_psi_complete_standard(const DensityState& rho, const Effect& e,
                                             const PostselectionModel& post, double s) {
    const auto ens = schemes::sigma_preparations(post.ideal_projector, rho);
    const std::vector<std::pair<std::string, DensityState>> preparations = {
        {"rho_star", rho}, {"rho_perp", ens.rho_perp}, {"sigma0", ens.sigma0}, {"sigma1", ens.sigma1}};

    const CMat& ee = e.mat();
    const CMat ep = e.complement().mat();
    const double theta = std::exp(-1.0 / (4.0 * s * s));
    auto heisenberg = [&](const CMat& f) {  // effect after the unrecorded weak measurement
        return ee * f * ee + ep * f * ep + Complex(theta, 0.0) * (ee * f * ep + ep * f * ee);
    };
    auto flipped = [&](const CMat& f) {  // the residual-disturbance effect (E - E') f (E - E')
        const CMat z = ee - ep;
        return z * f * z;
    };

    // Binned weak measurement, negative outcome first.
    const double a = gaussian_overlap(1, 1, s, 0);  // erfc(1/s)/2
    CMat neg = ee;
    neg *= Complex(a, 0.0);
    CMat pos_part = ep;
    pos_part *= Complex(0.5, 0.0);
    neg += pos_part;
    const Effect mw_neg(neg);

    const std::vector<std::pair<std::string, std::vector<Effect>>> measurements = {
        {"MF", {post.effect_fail, post.effect_pass}},
        {"MW_bin", {mw_neg, mw_neg.complement()}},
        {"MF_after_W",
         {Effect(heisenberg(post.effect_fail.mat())), Effect(heisenberg(post.effect_pass.mat()))}},
    };

    const PsiCompleteModel model = build_psi_complete_model(preparations, measurements);

    PsiCompleteAudit audit;
    for (size_t m = 0; m < measurements.size(); ++m)
        for (size_t l = 0; l < preparations.size(); ++l)
            for (size_t o = 0; o < measurements[m].second.size(); ++o) {
                const double quantum =
                    (measurements[m].second[o].mat() * preparations[l].second.mat()).trace().real();
                audit.reproduction_residual = std::max(
                    audit.reproduction_residual, std::abs(model.response[m][l][o] - quantum));
            }

    const double p_tilde = 0.5;
    for (size_t l = 0; l < preparations.size(); ++l)
        audit.worst_negative_response = std::max(audit.worst_negative_response, model.response[1][l][0]);
    audit.condition1_holds = audit.worst_negative_response <= p_tilde + 1e-9;

    const double p_d = schemes::disturbance_pd(s);
    for (size_t l = 0; l < preparations.size(); ++l) {
        for (int y = 0; y < 2; ++y) {
            const CMat& f = (y == 1 ? post.effect_pass : post.effect_fail).mat();
            const double lhs = model.response[2][l][y];
            const double md = (flipped(f) * preparations[l].second.mat()).trace().real();
            const double rhs = (1.0 - p_d) * model.response[0][l][y] + p_d * md;
            audit.worst_condition2_residual =
                std::max(audit.worst_condition2_residual, std::abs(lhs - rhs));
        }
    }
    audit.condition2_holds = audit.worst_condition2_residual <= 1e-9;

    // The lambda mixtures of the two operationally equal ensembles: point
    // masses on distinct labels, so the distributions differ.
    std::vector<double> mix_star(4, 0.0), mix_sigma(4, 0.0);
    mix_star[0] = ens.q_star;
    mix_star[1] = 1.0 - ens.q_star;
    mix_sigma[2] = ens.q0;
    mix_sigma[3] = ens.q1;
    double tv = 0.0;
    for (int i = 0; i < 4; ++i) tv += std::abs(mix_star[i] - mix_sigma[i]);
    audit.prep_mixture_distance = tv / 2.0;
    audit.prep_nc_holds = audit.prep_mixture_distance <= 1e-9;
    return audit;
}

}  // namespace wvctx::ontic

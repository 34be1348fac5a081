#include "wvctx/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wvctx::cli {

using json = nlohmann::json;
using qmath::Complex;
using schemes::SchemeKind;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
    }
}

double parse_decimal(const json& j, const std::string& where) {
    if (!j.is_string())
        throw std::invalid_argument("config: " + where + " must be a decimal string");
    const std::string text = j.get<std::string>();
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: cannot parse number '" + text + "' in " + where);
    }
}

Complex parse_entry(const json& j, const std::string& where) {
    if (j.is_string()) return Complex(parse_decimal(j, where), 0.0);
    if (j.is_array() && j.size() == 2)
        return Complex(parse_decimal(j[0], where), parse_decimal(j[1], where));
    throw std::invalid_argument("config: " + where + " entries must be \"re\" or [\"re\", \"im\"]");
}

std::vector<Complex> parse_amplitudes(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("config: " + where + ".amplitudes must be a nonempty array");
    std::vector<Complex> amps;
    for (const auto& entry : j) amps.push_back(parse_entry(entry, where));
    double norm2 = 0.0;
    for (const auto& a : amps) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("config: " + where + " amplitudes are not normalized");
    return amps;
}

qmath::CMat parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("config: " + where + ".matrix must be a nonempty array of rows");
    const int n = static_cast<int>(j.size());
    qmath::CMat m(n);
    for (int r = 0; r < n; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
            throw std::invalid_argument("config: " + where + ".matrix must be square");
        for (int c = 0; c < n; ++c) m(r, c) = parse_entry(j[r][c], where);
    }
    return m;
}

qmath::DensityState parse_state(const json& j) {
    reject_unknown_keys(j, {"amplitudes", "density"}, "state");
    if (j.contains("amplitudes")) {
        const auto amps = parse_amplitudes(j["amplitudes"], "state");
        return qmath::DensityState::pure(amps);
    }
    if (j.contains("density")) return qmath::DensityState(parse_matrix(j["density"], "state"));
    throw std::invalid_argument("config: state needs 'amplitudes' or 'density'");
}

qmath::Effect parse_projector(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"amplitudes", "matrix"}, where);
    if (j.contains("amplitudes")) {
        const auto amps = parse_amplitudes(j["amplitudes"], where);
        return qmath::Effect::projector(amps);
    }
    if (j.contains("matrix")) {
        qmath::Effect e(parse_matrix(j["matrix"], where));
        if (!e.is_projector())
            throw std::invalid_argument("config: " + where + " must be a projector");
        return e;
    }
    throw std::invalid_argument("config: " + where + " needs 'amplitudes' or 'matrix'");
}

SchemeKind parse_kind(const std::string& text) {
    if (text == "gaussian_position") return SchemeKind::gaussian_position;
    if (text == "gaussian_momentum") return SchemeKind::gaussian_momentum;
    if (text == "qubit_pointer") return SchemeKind::qubit_pointer;
    if (text == "coarse_grained") return SchemeKind::coarse_grained;
    throw std::invalid_argument("config: unknown scheme kind '" + text + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& out_path, const std::string& payload, std::ostream& fallback) {
    if (out_path.empty() || out_path == "-") {
        fallback << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << payload;
}

int sweep_thread_cap() {
    int cap = 0;
#ifdef _OPENMP
    cap = omp_get_max_threads();
#else
    cap = 1;
#endif
    if (const char* env = std::getenv("WVCTX_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1) cap = requested;
    }
    return cap;
}

/// Exit-code policy shared by every subcommand.
int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

std::string format_fraction(const polytope::Rational& q) { return polytope::to_fraction_string(q); }

json vrep_to_json(const polytope::VRep& v) {
    json verts = json::array();
    for (const auto& vertex : v.vertices) {
        json row = json::array();
        for (const auto& q : vertex) row.push_back(format_fraction(q));
        verts.push_back(std::move(row));
    }
    return json{{"dim", v.dim}, {"vertices", std::move(verts)}};
}

json hrep_to_json(const polytope::HRep& h) {
    auto forms = [](const std::vector<polytope::LinearForm>& list) {
        json arr = json::array();
        for (const auto& f : list) {
            json coeffs = json::array();
            for (const auto& q : f.coeffs) coeffs.push_back(format_fraction(q));
            arr.push_back(json{{"coeffs", std::move(coeffs)}, {"constant", format_fraction(f.constant)}});
        }
        return arr;
    };
    return json{{"dim", h.dim}, {"inequalities", forms(h.inequalities)}, {"equalities", forms(h.equalities)}};
}

json certificate_to_json(const bounds::Certificate& cert) {
    return json{{"theorem", bounds::to_string(cert.tag)},
                {"bound", format_number(cert.bound_value)},
                {"observed_p_minus", format_number(cert.observed_p_minus)},
                {"margin", format_number(cert.margin)},
                {"violated", cert.violated},
                {"trivial_regime", cert.trivial_regime},
                {"assumptions", cert.assumptions}};
}

RunPoint evaluate_point(const ExperimentConfig& config, double param) {
    schemes::SchemeSpec spec = config.scheme;
    if (config.sweep_is_epsilon)
        spec.epsilon_pointer = param;
    else
        spec.s = param;
    spec.validate();

    const auto post = schemes::noisy_postselection(config.postselection_projector, spec.noise_eps);

    RunPoint point;
    point.param = param;
    switch (spec.kind) {
        case SchemeKind::gaussian_position: {
            point.stats = schemes::gaussian_position_stats(config.state, config.weak_projector, post, spec.s);
            point.certificates.push_back(bounds::bound_theorem(point.stats, bounds::TheoremTag::thm1));
            const auto ens = schemes::sigma_preparations(config.postselection_projector, config.state);
            const double c_s = schemes::c_s_value(ens, post);
            point.certificates.push_back(bounds::bound_theorem4(point.stats, c_s, ens.q_star));
            break;
        }
        case SchemeKind::gaussian_momentum: {
            point.stats = schemes::gaussian_momentum_stats(config.state, config.weak_projector,
                                                           post.effect_pass, spec.s);
            point.certificates.push_back(bounds::bound_theorem(point.stats, bounds::TheoremTag::thm2));
            if (spec.noise_eps > 0.0)
                point.notes.push_back(
                    "momentum statistics with a noisy postselection extend the ideal formula "
                    "linearly in the pass effect");
            break;
        }
        case SchemeKind::qubit_pointer: {
            point.stats = schemes::qubit_pointer_stats(config.state, config.weak_projector,
                                                       post.effect_pass, spec.epsilon_pointer);
            point.certificates.push_back(bounds::bound_theorem(point.stats, bounds::TheoremTag::thm3));
            break;
        }
        case SchemeKind::coarse_grained: {
            point.stats = schemes::coarse_grained_stats(config.state, config.weak_projector,
                                                        post.effect_pass, spec.s);
            point.certificates.push_back(bounds::bound_theorem(point.stats, bounds::TheoremTag::thm3));
            break;
        }
    }
    return point;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ExperimentConfig parse_config_text(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: document must be an object");
    reject_unknown_keys(j, {"schema", "scheme", "state", "projector", "postselection", "sweep", "bins"},
                        "top level");
    if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
        throw std::invalid_argument("config: schema must be the integer 1");
    for (const char* key : {"scheme", "state", "projector", "postselection"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("config: missing '") + key + "'");

    const json& sj = j["scheme"];
    reject_unknown_keys(sj, {"kind", "s", "epsilon_pointer", "noise_eps"}, "scheme");
    if (!sj.contains("kind")) throw std::invalid_argument("config: scheme.kind is required");

    schemes::SchemeSpec spec;
    spec.kind = parse_kind(sj["kind"].get<std::string>());
    const bool wants_epsilon = spec.kind == SchemeKind::qubit_pointer;
    if (sj.contains(wants_epsilon ? "s" : "epsilon_pointer"))
        throw std::invalid_argument("config: scheme carries a parameter its kind does not use");
    if (sj.contains("s")) spec.s = parse_decimal(sj["s"], "scheme.s");
    if (sj.contains("epsilon_pointer"))
        spec.epsilon_pointer = parse_decimal(sj["epsilon_pointer"], "scheme.epsilon_pointer");
    if (sj.contains("noise_eps")) spec.noise_eps = parse_decimal(sj["noise_eps"], "scheme.noise_eps");
    std::vector<double> sweep;
    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        reject_unknown_keys(sw, {"s", "epsilon_pointer"}, "sweep");
        const char* key = wants_epsilon ? "epsilon_pointer" : "s";
        if (!sw.contains(key) || sw.size() != 1)
            throw std::invalid_argument(std::string("config: sweep must contain exactly '") + key + "'");
        for (const auto& entry : sw[key]) sweep.push_back(parse_decimal(entry, "sweep"));
        if (sweep.empty()) throw std::invalid_argument("config: sweep list is empty");
    } else {
        sweep.push_back(wants_epsilon ? spec.epsilon_pointer : spec.s);
    }

    int bins = 64;
    if (j.contains("bins")) {
        if (!j["bins"].is_number_integer() || j["bins"].get<int>() < 2)
            throw std::invalid_argument("config: bins must be an integer >= 2");
        bins = j["bins"].get<int>();
    }

    ExperimentConfig config{spec,
                            parse_state(j["state"]),
                            parse_projector(j["projector"], "projector"),
                            parse_projector(j["postselection"], "postselection"),
                            std::move(sweep),
                            wants_epsilon,
                            bins};
    if (config.state.dim() != config.weak_projector.dim() ||
        config.state.dim() != config.postselection_projector.dim())
        throw std::invalid_argument("config: state, projector and postselection dimensions differ");
    // Validate every sweep point eagerly so bad input fails before any work.
    for (double v : config.sweep) {
        schemes::SchemeSpec probe = config.scheme;
        (config.sweep_is_epsilon ? probe.epsilon_pointer : probe.s) = v;
        probe.validate();
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_file(path));
}

RunReport run_simulation(const ExperimentConfig& config) {
    const int n = static_cast<int>(config.sweep.size());
    std::vector<RunPoint> points(n);
    std::vector<std::exception_ptr> errors(n);

    const int threads = std::min(sweep_thread_cap(), n);
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            points[i] = evaluate_point(config, config.sweep[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    (void)threads;
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    RunReport report;
    report.points = std::move(points);
    return report;
}

std::string report_to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "param,p_minus,p_f,p_d,p_m,p_tilde,kd_re,kd_im,leading_order_p_minus,"
           "theorem,bound,margin,violated\n";
    for (const auto& point : report.points) {
        const auto& st = point.stats;
        for (const auto& cert : point.certificates) {
            out << format_number(point.param) << ',' << format_number(st.p_minus) << ','
                << format_number(st.p_f) << ',' << format_number(st.p_d) << ','
                << (st.p_m ? format_number(*st.p_m) : std::string()) << ','
                << format_number(st.p_tilde) << ',' << format_number(st.kd_numerator.real()) << ','
                << format_number(st.kd_numerator.imag()) << ','
                << format_number(st.leading_order_p_minus) << ',' << bounds::to_string(cert.tag)
                << ',' << format_number(cert.bound_value) << ',' << format_number(cert.margin)
                << ',' << (cert.violated ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

std::string report_to_json_text(const RunReport& report) {
    json runs = json::array();
    for (const auto& point : report.points) {
        const auto& st = point.stats;
        json stats{{"p_minus", format_number(st.p_minus)},
                   {"p_f", format_number(st.p_f)},
                   {"p_d", format_number(st.p_d)},
                   {"p_tilde", format_number(st.p_tilde)},
                   {"kd_re", format_number(st.kd_numerator.real())},
                   {"kd_im", format_number(st.kd_numerator.imag())},
                   {"leading_order_p_minus", format_number(st.leading_order_p_minus)}};
        if (st.p_m) stats["p_m"] = format_number(*st.p_m);
        json certs = json::array();
        for (const auto& cert : point.certificates) certs.push_back(certificate_to_json(cert));
        runs.push_back(json{{"param", format_number(point.param)},
                            {"stats", std::move(stats)},
                            {"certificates", std::move(certs)},
                            {"notes", point.notes}});
    }
    return json{{"schema", 1}, {"runs", std::move(runs)}}.dump(2) + "\n";
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& format, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (format != "csv" && format != "json")
            throw std::invalid_argument("format must be 'json' or 'csv'");
        const auto config = parse_config_file(config_path);
        const auto report = run_simulation(config);
        write_output(out_path, format == "csv" ? report_to_csv(report) : report_to_json_text(report),
                     out);
    });
}

int cmd_assess(double p_minus, double p_f, double p_d, double q_star, std::optional<double> p_m,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        double value = 0.0;
        if (!p_m) {
            const auto req = bounds::required_cs(p_minus, p_f, p_d, q_star);
            value = req.value;
        } else {
            // Discrete-scheme variant: p~ = (1 + p_m)/2 in the template-2 bound.
            if (*p_m < 0.0 || *p_m > 1.0) throw std::invalid_argument("p_m must lie in [0, 1]");
            const double p_tilde = (1.0 + *p_m) / 2.0;
            const double mx = std::max(p_tilde - p_d, 1.0 - p_tilde);
            value = 1.0 - q_star * (p_minus - p_f * p_tilde - (1.0 - p_f) * p_d) / mx;
        }
        out << "required_c_s " << format_number(value) << "\n";
        out << (value <= 1.0 ? "feasible: a sharp enough postselection certifies the violation"
                             : "infeasible: required sharpness exceeds 1")
            << "\n";
    });
}

int cmd_models(const std::string& config_path, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        const auto config = parse_config_file(config_path);
        if (config.scheme.kind != SchemeKind::gaussian_position)
            throw std::invalid_argument("models: config must use the gaussian_position scheme");
        const double s = config.sweep.front();
        const auto post = schemes::noisy_postselection(config.postselection_projector,
                                                       config.scheme.noise_eps);
        const auto data = ontic::extract_operational_data(config.state, config.weak_projector, post,
                                                          s, config.bins);

        const auto print_audit = [&](const std::string& name, const ontic::AuditReport& audit) {
            out << "model " << name << ":\n";
            out << "  reproduces statistics: " << (audit.reproduces_stats ? "yes" : "NO")
                << " (max residual " << format_number(audit.max_residual) << ")\n";
            out << "  condition 1 (negative-outcome response <= p~): "
                << (audit.condition1_holds ? "holds" : "FAILS") << " (worst mass "
                << format_number(audit.worst_negative_mass) << " vs p~ "
                << format_number(data.p_tilde) << ")\n";
            out << "  condition 2 (transition within p_d of identity): "
                << (audit.condition2_holds ? "holds" : "FAILS") << " (worst off-diagonal "
                << format_number(audit.worst_offdiagonal) << " vs p_d " << format_number(data.p_d)
                << ")\n";
            out << "  preparation equivalences: " << (audit.prep_nc_holds ? "hold" : "FAIL") << "\n";
        };

        const auto minimal = ontic::build_minimal_disturbance_model(data);
        const auto full = ontic::build_full_disturbance_model(data);
        const auto audit_min = ontic::audit_model(minimal, data);
        const auto audit_full = ontic::audit_model(full, data);
        print_audit(minimal.name, audit_min);
        print_audit(full.name, audit_full);

        const auto psi = ontic::audit_psi_complete_standard(config.state, config.weak_projector, post, s);
        out << "model psi_complete:\n";
        out << "  reproduces statistics: yes (max residual "
            << format_number(psi.reproduction_residual) << ")\n";
        out << "  condition 1 (negative-outcome response <= p~): "
            << (psi.condition1_holds ? "holds" : "FAILS") << " (worst response "
            << format_number(psi.worst_negative_response) << ")\n";
        out << "  condition 2 (postselection-after-measurement decomposition): "
            << (psi.condition2_holds ? "holds" : "FAILS") << " (worst residual "
            << format_number(psi.worst_condition2_residual) << ")\n";
        out << "  preparation equivalences: " << (psi.prep_nc_holds ? "hold" : "FAIL")
            << " (mixture distance " << format_number(psi.prep_mixture_distance) << ")\n";

        if (!out_path.empty() && out_path != "-") {
            auto table_to_json = [](const std::vector<std::vector<std::vector<double>>>& t) {
                json a = json::array();
                for (const auto& rows : t) {
                    json b = json::array();
                    for (const auto& row : rows) {
                        json c = json::array();
                        for (double v : row) {
                            char buf[64];
                            std::snprintf(buf, sizeof(buf), "%.17g", v);
                            c.push_back(std::string(buf));
                        }
                        b.push_back(std::move(c));
                    }
                    a.push_back(std::move(b));
                }
                return a;
            };
            auto cells_to_json = [&] {
                json a = json::array();
                for (const auto& cell : data.cells) {
                    a.push_back(json::array({std::isinf(cell.lo) ? "-inf" : format_number(cell.lo),
                                             std::isinf(cell.hi) ? "inf" : format_number(cell.hi)}));
                }
                return a;
            };
            auto model_to_json = [&](const ontic::OnticModel& m, const ontic::AuditReport& a) {
                json prep = json::array();
                for (double v : m.prep) prep.push_back(format_number(v));
                return json{{"prep", std::move(prep)},
                            {"instrument", table_to_json(m.instrument)},
                            {"audit",
                             {{"reproduces", a.reproduces_stats},
                              {"max_residual", format_number(a.max_residual)},
                              {"condition1_holds", a.condition1_holds},
                              {"condition2_holds", a.condition2_holds},
                              {"prep_nc_holds", a.prep_nc_holds}}}};
            };
            const json doc{{"schema", 1},
                           {"cells", cells_to_json()},
                           {"models",
                            {{"minimal_disturbance", model_to_json(minimal, audit_min)},
                             {"full_disturbance", model_to_json(full, audit_full)}}},
                           {"psi_complete",
                            {{"condition1_holds", psi.condition1_holds},
                             {"condition2_holds", psi.condition2_holds},
                             {"prep_nc_holds", psi.prep_nc_holds},
                             {"prep_mixture_distance", format_number(psi.prep_mixture_distance)}}}};
            write_output(out_path, doc.dump(2) + "\n", out);
        }
    });
}

int cmd_polytope(const std::string& pipeline, const std::string& p_d, const std::string& p_tilde,
                 const std::string& q0, const std::string& q_star, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const polytope::Rational rpd = polytope::parse_rational(p_d);
        const polytope::Rational rpt = polytope::parse_rational(p_tilde);
        // Keep stdout machine-readable when the JSON document goes there.
        std::ostream& info = out_path == "-" ? err : out;
        if (pipeline == "lemma1") {
            const auto result = pipelines::lemma1_pipeline(rpd, rpt);
            info << "assignment vertices: " << result.assignment_vertices.vertices.size() << "\n";
            info << "deterministic vertices: " << result.deterministic_vertices.vertices.size() << "\n";
            info << "hull vertices: " << result.hull_vertices.vertices.size() << "\n";
            info << "optimal bound facet present: " << (result.bound_facet_present ? "yes" : "no")
                << "\n";
            info << "trivial facet p_minus <= p~ present: "
                << (result.trivial_facet_present ? "yes" : "no") << "\n";
            const json doc{{"schema", 1},
                           {"pipeline", "lemma1"},
                           {"p_d", format_fraction(rpd)},
                           {"p_tilde", format_fraction(rpt)},
                           {"assignment_vertices", vrep_to_json(result.assignment_vertices)},
                           {"deterministic_vertices", vrep_to_json(result.deterministic_vertices)},
                           {"hull_vertices", vrep_to_json(result.hull_vertices)},
                           {"hull_facets", hrep_to_json(result.hull_facets)},
                           {"bound_facet_present", result.bound_facet_present},
                           {"trivial_facet_present", result.trivial_facet_present},
                           {"trivial_regime", result.trivial_regime}};
            write_output(out_path, doc.dump(2) + "\n", out);
        } else if (pipeline == "lemma2") {
            pipelines::ScenarioParams params{rpd, rpt, polytope::parse_rational(q0),
                                             polytope::parse_rational(q_star)};
            const auto result = pipelines::lemma2_pipeline(params);
            info << "assignment vertices: " << result.assignment_vertices.vertices.size() << "\n";
            info << "reduced vertices: " << result.reduced_vertices.vertices.size() << "\n";
            info << "intermediate vertices: " << result.intermediate_vertices.vertices.size()
                << " (dimension " << result.intermediate_dim << ")\n";
            info << "tradeoff vertices: " << result.tradeoff_vertices.vertices.size() << "\n";
            info << "optimal bound facet present: " << (result.bound_facet_present ? "yes" : "no")
                << "\n";
            const json doc{{"schema", 1},
                           {"pipeline", "lemma2"},
                           {"p_d", format_fraction(rpd)},
                           {"p_tilde", format_fraction(rpt)},
                           {"q0", format_fraction(params.q0)},
                           {"q_star", format_fraction(params.q_star)},
                           {"assignment_vertices", vrep_to_json(result.assignment_vertices)},
                           {"reduced_vertices", vrep_to_json(result.reduced_vertices)},
                           {"intermediate_vertex_count", result.intermediate_vertices.vertices.size()},
                           {"intermediate_dim", result.intermediate_dim},
                           {"tradeoff_vertices", vrep_to_json(result.tradeoff_vertices)},
                           {"tradeoff_facets", hrep_to_json(result.tradeoff_facets)},
                           {"bound_facet_present", result.bound_facet_present}};
            write_output(out_path, doc.dump(2) + "\n", out);
        } else {
            throw std::invalid_argument("pipeline must be 'lemma1' or 'lemma2'");
        }
    });
}

int cmd_tradeoff(const std::string& p_d, const std::string& p_tilde, const std::string& q0,
                 const std::string& q_star, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        (void)q0;  // the ensemble split does not enter the bound itself
        const double pd = static_cast<double>(polytope::parse_rational(p_d));
        const double pt = static_cast<double>(polytope::parse_rational(p_tilde));
        const double qs = static_cast<double>(polytope::parse_rational(q_star));
        std::ostringstream csv;
        csv << "p_f,c_s,max_p_minus\n";
        for (int i = 0; i <= 20; ++i) {
            const double p_f = i / 20.0;
            for (int jc = 80; jc <= 100; ++jc) {
                const double c_s = jc / 100.0;
                const double bound =
                    std::min(bounds::bound_template2(p_f, std::min(pd, pt), pt, c_s, qs), pt);
                csv << format_number(p_f) << ',' << format_number(c_s) << ','
                    << format_number(bound) << '\n';
            }
        }
        write_output(out_path, csv.str(), out);
    });
}

}  // namespace wvctx::cli

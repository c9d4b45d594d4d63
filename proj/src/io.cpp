#include "dicke/io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dicke/protocols.hpp"
#include "dicke/validation.hpp"

namespace dicke::io {

namespace {

// thrown through parse_config when the user asked for --help
class help_requested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json as_json(cplx value) { return nlohmann::json::array({value.real(), value.imag()}); }

std::string half_label(int twice_value) {
    if (twice_value % 2 == 0)
        return std::to_string(twice_value / 2);
    return std::to_string(twice_value) + "/2";
}

PolarizationQubit normalized_qubit(cplx alpha, cplx beta) {
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (norm < 1e-12)
        throw config_error("qubit amplitudes --alpha/--beta are both zero");
    return PolarizationQubit{alpha / norm, beta / norm};
}

nlohmann::json dump_joint(const JointState& state) {
    nlohmann::json basis = nlohmann::json::array();
    nlohmann::json amplitudes = nlohmann::json::array();
    for (int im = 0; im < state.spin_dim(); ++im)
        for (int np = 0; np <= state.n_max; ++np)
            for (int nm = 0; nm <= state.n_max; ++nm) {
                basis.push_back("m=" + half_label(2 * im - state.two_j) +
                                " n+=" + std::to_string(np) + " n-=" + std::to_string(nm));
                amplitudes.push_back(as_json(state.at(im, np, nm)));
            }
    return {{"two_j", state.two_j}, {"n_max", state.n_max}, {"basis", basis},
            {"amplitudes", amplitudes}};
}

nlohmann::json dump_dicke(const DickeState& state) {
    nlohmann::json basis = nlohmann::json::array();
    nlohmann::json amplitudes = nlohmann::json::array();
    for (int im = 0; im < state.dim(); ++im) {
        basis.push_back("m=" + half_label(2 * im - state.two_j));
        amplitudes.push_back(as_json(state.amp[im]));
    }
    return {{"two_j", state.two_j}, {"basis", basis}, {"amplitudes", amplitudes}};
}

nlohmann::json dump_field(const FieldState& state) {
    nlohmann::json basis = nlohmann::json::array();
    nlohmann::json amplitudes = nlohmann::json::array();
    for (int np = 0; np <= state.n_max; ++np)
        for (int nm = 0; nm <= state.n_max; ++nm) {
            basis.push_back("n+=" + std::to_string(np) + " n-=" + std::to_string(nm));
            amplitudes.push_back(as_json(state.at(np, nm)));
        }
    return {{"n_max", state.n_max}, {"basis", basis}, {"amplitudes", amplitudes}};
}

nlohmann::json dump_product(const std::vector<cplx>& state, int n_atoms) {
    nlohmann::json basis = nlohmann::json::array();
    nlohmann::json amplitudes = nlohmann::json::array();
    for (std::size_t b = 0; b < state.size(); ++b) {
        std::string label(n_atoms, '-');
        for (int j = 0; j < n_atoms; ++j)
            if ((b >> j) & 1u)
                label[j] = '+';
        basis.push_back(label);
        amplitudes.push_back(as_json(state[b]));
    }
    return {{"n_atoms", n_atoms}, {"basis", basis}, {"amplitudes", amplitudes}};
}

struct CouplingRoute {
    double phi0 = 0.0;
    double time = 0.0;
};

CouplingRoute resolve_coupling(const ScenarioConfig& cfg, bool time_needed) {
    const bool direct = cfg.phi0t.has_value();
    const bool rabi_route = cfg.rabi.has_value() || cfg.delta.has_value() || cfg.time.has_value();
    if (direct && rabi_route)
        throw config_error("give either --phi0t or the --rabi/--delta/--time route, not both");
    if (direct)
        return {*cfg.phi0t, 1.0};
    if (!cfg.rabi.has_value() || !cfg.delta.has_value())
        throw config_error("missing coupling: give --phi0t, or --rabi and --delta" +
                           std::string(time_needed ? " and --time" : ""));
    if (time_needed && !cfg.time.has_value())
        throw config_error("missing --time for the --rabi/--delta route");
    if (*cfg.delta == 0.0)
        throw config_error("--delta must be nonzero");
    return {(*cfg.rabi) * (*cfg.rabi) / (*cfg.delta), cfg.time.value_or(1.0)};
}

nlohmann::json base_echo(const ScenarioConfig& cfg) {
    nlohmann::json echo{{"scenario", cfg.scenario},
                        {"seed", cfg.seed},
                        {"pi_units", cfg.pi_units}};
    return echo;
}

RunRecord finish_record(nlohmann::json echo, nlohmann::json results, nlohmann::json states) {
    nlohmann::json doc{{"tool_version", kToolVersion},
                       {"config", std::move(echo)},
                       {"results", std::move(results)}};
    if (!states.is_null() && !states.empty())
        doc["states"] = std::move(states);
    return RunRecord{std::move(doc)};
}

RunRecord run_cat(const ScenarioConfig& cfg) {
    const CouplingRoute route = resolve_coupling(cfg, true);
    const PolarizationQubit qubit = normalized_qubit(cfg.alpha, cfg.beta);
    const CatResult cat = run_mesoscopic_cat(SpinJ::from_atom_count(cfg.n_atoms), cfg.theta,
                                             cfg.phi, qubit, route.phi0, route.time);

    nlohmann::json echo = base_echo(cfg);
    echo["n_atoms"] = cfg.n_atoms;
    echo["theta"] = cfg.theta;
    echo["phi"] = cfg.phi;
    echo["alpha"] = as_json(qubit.alpha);
    echo["beta"] = as_json(qubit.beta);
    echo["phi0t"] = route.phi0 * route.time;

    nlohmann::json results{{"prob_x", cat.prob_x},
                           {"prob_y", cat.prob_y},
                           {"branch_overlap", as_json(cat.branch_overlap)},
                           {"branch_overlap_abs", std::abs(cat.branch_overlap)},
                           {"branch_phase", cat.branch_phase},
                           {"entropy_bits", cat.entropy_bits},
                           {"closed_form_error", cat.closed_form_error}};

    nlohmann::json states;
    if (cfg.dump_state) {
        states["joint"] = dump_joint(cat.joint);
        if (cat.atoms_after_x)
            states["atoms_after_x"] = dump_dicke(*cat.atoms_after_x);
        if (cat.atoms_after_y)
            states["atoms_after_y"] = dump_dicke(*cat.atoms_after_y);
    }
    return finish_record(std::move(echo), std::move(results), std::move(states));
}

RunRecord run_ghz_record(const ScenarioConfig& cfg) {
    const CouplingRoute route = resolve_coupling(cfg, true);
    const PolarizationQubit qubit = normalized_qubit(cfg.alpha, cfg.beta);
    const GhzResult ghz =
        run_ghz(cfg.n_atoms, cfg.theta, cfg.phi, qubit, route.phi0, route.time);

    nlohmann::json echo = base_echo(cfg);
    echo["n_atoms"] = cfg.n_atoms;
    echo["theta"] = cfg.theta;
    echo["phi"] = cfg.phi;
    echo["alpha"] = as_json(qubit.alpha);
    echo["beta"] = as_json(qubit.beta);
    echo["phi0t"] = route.phi0 * route.time;

    nlohmann::json results{{"x_probability", ghz.x_probability},
                           {"per_atom_branch_overlap", as_json(ghz.per_atom_branch_overlap)},
                           {"branch_overlap", as_json(ghz.branch_overlap)},
                           {"branch_overlap_abs", std::abs(ghz.branch_overlap)},
                           {"branch_phase", ghz.branch_phase},
                           {"branches_degenerate", ghz.branches_degenerate}};
    results["ghz_fidelity"] =
        ghz.ghz_fidelity ? nlohmann::json(*ghz.ghz_fidelity) : nlohmann::json();

    nlohmann::json states;
    if (cfg.dump_state)
        states["product_state"] = dump_product(ghz.state, cfg.n_atoms);
    return finish_record(std::move(echo), std::move(results), std::move(states));
}

RunRecord run_trapping_record(const ScenarioConfig& cfg) {
    const CouplingRoute route = resolve_coupling(cfg, false);
    const PolarizationQubit qubit = normalized_qubit(cfg.alpha, cfg.beta);
    const TrappingResult trap =
        run_trapping(cfg.n_atoms, cfg.theta, cfg.phi, qubit, route.phi0);

    nlohmann::json echo = base_echo(cfg);
    echo["n_atoms"] = cfg.n_atoms;
    echo["theta"] = cfg.theta;
    echo["phi"] = cfg.phi;
    echo["alpha"] = as_json(qubit.alpha);
    echo["beta"] = as_json(qubit.beta);

    nlohmann::json results{{"fidelity_initial", trap.fidelity_initial},
                           {"fidelity_flipped", trap.fidelity_flipped},
                           {"even_case", trap.even_case},
                           {"entropy_bits", trap.entropy_bits},
                           {"field_purity", trap.field_purity}};
    return finish_record(std::move(echo), std::move(results), nlohmann::json());
}

RunRecord run_holography_record(const ScenarioConfig& cfg) {
    const CouplingRoute route = resolve_coupling(cfg, true);
    const PolarizationQubit qubit = normalized_qubit(cfg.alpha, cfg.beta);
    const HologramResult holo = run_holography(SpinJ::from_atom_count(cfg.n_atoms), cfg.theta,
                                               cfg.phi, qubit, route.phi0, route.time);

    nlohmann::json echo = base_echo(cfg);
    echo["n_atoms"] = cfg.n_atoms;
    echo["theta"] = cfg.theta;
    echo["phi"] = cfg.phi;
    echo["alpha"] = as_json(qubit.alpha);
    echo["beta"] = as_json(qubit.beta);
    echo["phi0t"] = route.phi0 * route.time;

    nlohmann::json results{{"success_probability", holo.success_probability},
                           {"phase_correction", holo.phase_correction},
                           {"retrievable", holo.retrieved.has_value()},
                           {"m_population", holo.m_population}};
    if (holo.retrieved) {
        results["retrieved_alpha"] = as_json(holo.retrieved->alpha);
        results["retrieved_beta"] = as_json(holo.retrieved->beta);
        results["corrected_fidelity"] = holo.corrected_fidelity;
    } else {
        results["retrieved_alpha"] = nlohmann::json();
        results["retrieved_beta"] = nlohmann::json();
        results["corrected_fidelity"] = nlohmann::json();
    }
    return finish_record(std::move(echo), std::move(results), nlohmann::json());
}

RunRecord run_field_cat_record(const ScenarioConfig& cfg) {
    const CouplingRoute route = resolve_coupling(cfg, true);
    const FieldCatResult cat =
        run_field_cat(cfg.alpha, cfg.beta, cfg.theta, cfg.phi, route.phi0, route.time,
                      cfg.n_max, cfg.basis_angle);
    if (!cat.deficit_ok)
        throw guard_error("photon cutoff too small: truncation deficit " +
                          std::to_string(cat.truncation_deficit));

    nlohmann::json echo = base_echo(cfg);
    echo["theta"] = cfg.theta;
    echo["phi"] = cfg.phi;
    echo["alpha"] = as_json(cfg.alpha);
    echo["beta"] = as_json(cfg.beta);
    echo["phi0t"] = route.phi0 * route.time;
    echo["n_max"] = cfg.n_max;
    echo["basis_angle"] = cfg.basis_angle;

    nlohmann::json results{{"probability_aligned", cat.outcome_aligned.probability},
                           {"probability_orthogonal", cat.outcome_orthogonal.probability},
                           {"truncation_deficit", cat.truncation_deficit},
                           {"closed_form_error", cat.closed_form_error}};

    nlohmann::json states;
    if (cfg.dump_state) {
        states["joint"] = dump_joint(cat.joint);
        if (cat.outcome_aligned.state)
            states["field_aligned"] = dump_field(*cat.outcome_aligned.state);
        if (cat.outcome_orthogonal.state)
            states["field_orthogonal"] = dump_field(*cat.outcome_orthogonal.state);
    }
    return finish_record(std::move(echo), std::move(results), std::move(states));
}

RunRecord run_validate_record(const ScenarioConfig& cfg) {
    const PolarizationQubit qubit = normalized_qubit(cfg.alpha, cfg.beta);
    const double coupling_phase = pi / 2.0;
    const EffectiveValidation lo = validate_effective_evolution(
        cfg.n_atoms, cfg.theta, cfg.phi, qubit, cfg.ratio1, coupling_phase, cfg.n_max);
    const EffectiveValidation hi = validate_effective_evolution(
        cfg.n_atoms, cfg.theta, cfg.phi, qubit, cfg.ratio2, coupling_phase, cfg.n_max);

    nlohmann::json echo = base_echo(cfg);
    echo["n_atoms"] = cfg.n_atoms;
    echo["theta"] = cfg.theta;
    echo["phi"] = cfg.phi;
    echo["alpha"] = as_json(qubit.alpha);
    echo["beta"] = as_json(qubit.beta);
    echo["n_max"] = cfg.n_max;
    echo["ratio1"] = cfg.ratio1;
    echo["ratio2"] = cfg.ratio2;

    nlohmann::json results{{"coupling_phase", coupling_phase},
                           {"infidelity_1", lo.infidelity},
                           {"infidelity_2", hi.infidelity},
                           {"improvement_factor",
                            hi.infidelity > 0.0 ? lo.infidelity / hi.infidelity : 0.0},
                           {"leakage_1", lo.ground_leakage},
                           {"leakage_2", hi.ground_leakage}};
    return finish_record(std::move(echo), std::move(results), nlohmann::json());
}

RunRecord run_algebra_record(const ScenarioConfig& cfg) {
    const AlgebraResiduals residuals = run_algebra_check(cfg.n_atoms, cfg.n_max, cfg.seed);

    nlohmann::json echo = base_echo(cfg);
    echo["n_atoms"] = cfg.n_atoms;  // 2 J_max
    echo["n_max"] = cfg.n_max;

    nlohmann::json results{{"residual_spin_commutator", residuals.spin_commutator},
                           {"residual_casimir", residuals.casimir},
                           {"residual_field_commutator", residuals.field_commutator},
                           {"residual_coherent_norm", residuals.coherent_norm},
                           {"residual_overlap", residuals.overlap},
                           {"residual_random_action", residuals.random_action}};
    return finish_record(std::move(echo), std::move(results), nlohmann::json());
}

RunRecord single_run(const ScenarioConfig& cfg) {
    if (cfg.scenario == "cat")
        return run_cat(cfg);
    if (cfg.scenario == "ghz")
        return run_ghz_record(cfg);
    if (cfg.scenario == "trapping")
        return run_trapping_record(cfg);
    if (cfg.scenario == "holography")
        return run_holography_record(cfg);
    if (cfg.scenario == "field-cat")
        return run_field_cat_record(cfg);
    if (cfg.scenario == "validate-effective")
        return run_validate_record(cfg);
    if (cfg.scenario == "algebra-check")
        return run_algebra_record(cfg);
    throw config_error("unknown scenario '" + cfg.scenario + "'");
}

const std::vector<std::string>& sweepable_parameters(const std::string& scenario) {
    static const std::vector<std::string> angles_and_time{"theta", "phi", "phi0t", "time"};
    static const std::vector<std::string> with_basis{"theta", "phi", "phi0t", "time",
                                                     "basis-angle"};
    static const std::vector<std::string> angles_only{"theta", "phi"};
    static const std::vector<std::string> none{};
    if (scenario == "field-cat")
        return with_basis;
    if (scenario == "trapping" || scenario == "validate-effective")
        return angles_only;
    if (scenario == "algebra-check")
        return none;
    return angles_and_time;
}

void apply_sweep_value(ScenarioConfig& cfg, const std::string& name, double value) {
    if (name == "theta")
        cfg.theta = value;
    else if (name == "phi")
        cfg.phi = value;
    else if (name == "phi0t") {
        cfg.phi0t = value;
        cfg.rabi.reset();
        cfg.delta.reset();
        cfg.time.reset();
    } else if (name == "time")
        cfg.time = value;
    else if (name == "basis-angle")
        cfg.basis_angle = value;
    else
        throw config_error("unsupported sweep parameter '" + name + "'");
}

void validate_sweep(const ScenarioConfig& cfg) {
    if (!cfg.sweep)
        return;
    const auto& allowed = sweepable_parameters(cfg.scenario);
    if (std::find(allowed.begin(), allowed.end(), cfg.sweep->parameter) == allowed.end())
        throw config_error("parameter '" + cfg.sweep->parameter + "' cannot be swept in the " +
                           cfg.scenario + " scenario");
    if (cfg.sweep->count < 1)
        throw config_error("sweep count must be >= 1");
    if (cfg.sweep->parameter == "time" &&
        (cfg.phi0t.has_value() || !cfg.rabi.has_value() || !cfg.delta.has_value()))
        throw config_error("sweeping time needs the --rabi/--delta route, not --phi0t");
}

SweepSpec parse_sweep_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ':'))
        parts.push_back(item);
    if (parts.size() != 4)
        throw config_error("sweep spec must look like name:start:stop:count, got '" + text +
                           "'");
    SweepSpec spec;
    spec.parameter = parts[0];
    try {
        std::size_t used = 0;
        spec.start = std::stod(parts[1], &used);
        if (used != parts[1].size())
            throw std::invalid_argument(parts[1]);
        spec.stop = std::stod(parts[2], &used);
        if (used != parts[2].size())
            throw std::invalid_argument(parts[2]);
        spec.count = std::stoi(parts[3], &used);
        if (used != parts[3].size())
            throw std::invalid_argument(parts[3]);
    } catch (const std::exception&) {
        throw config_error("malformed sweep spec '" + text + "'");
    }
    return spec;
}

bool is_angular_parameter(const std::string& name) {
    return name == "theta" || name == "phi" || name == "phi0t" || name == "basis-angle";
}

}  // namespace

double ScenarioConfig::resolved_phi0() const { return resolve_coupling(*this, false).phi0; }
double ScenarioConfig::resolved_time() const { return resolve_coupling(*this, false).time; }

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw config_error("empty complex literal");

    const auto parse_part = [&](const std::string& part, const char* what, bool bare_sign_ok) {
        if (bare_sign_ok) {  // "i", "+i", "-i"
            if (part.empty() || part == "+")
                return 1.0;
            if (part == "-")
                return -1.0;
        }
        try {
            std::size_t used = 0;
            const double value = std::stod(part, &used);
            if (used != part.size())
                throw std::invalid_argument(part);
            return value;
        } catch (const std::exception&) {
            throw config_error("malformed " + std::string(what) + " in complex literal '" +
                               text + "'");
        }
    };

    const bool imaginary = s.back() == 'i' || s.back() == 'I';
    if (!imaginary)
        return cplx{parse_part(s, "real part", false), 0.0};

    s.pop_back();
    // split before the sign of the imaginary part (not an exponent sign)
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos)
        return cplx{0.0, parse_part(s, "imaginary part", true)};
    return cplx{parse_part(s.substr(0, split), "real part", false),
                parse_part(s.substr(split), "imaginary part", true)};
}

ScenarioConfig parse_config(const std::vector<std::string>& args) {
    ScenarioConfig cfg;
    std::string alpha_text, beta_text, sweep_text, format_text = "json";

    CLI::App app{"collective-spin / two-mode-field dispersive simulator"};
    app.require_subcommand(1);
    app.set_config("--config");

    const auto add_output_options = [&](CLI::App* cmd) {
        cmd->add_option("--sweep", sweep_text, "parameter sweep, name:start:stop:count");
        cmd->add_option("--output", cfg.output, "output file (default: stdout)");
        cmd->add_option("--format", format_text, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--dump-state", cfg.dump_state, "include state amplitudes in the output");
        cmd->add_flag("--timing", cfg.timing,
                      "include wall-clock duration (breaks byte-identical reruns)");
        cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
        cmd->add_flag("--pi-units", cfg.pi_units, "angles are given in units of pi");
    };
    const auto bind_optional = [](std::optional<double>& slot) {
        return [&slot](const CLI::results_t& res) {
            try {
                std::size_t used = 0;
                const double value = std::stod(res[0], &used);
                if (used != res[0].size())
                    return false;
                slot = value;
                return true;
            } catch (const std::exception&) {
                return false;
            }
        };
    };
    const auto add_coupling_options = [&](CLI::App* cmd, bool with_time) {
        cmd->add_option("--phi0t", bind_optional(cfg.phi0t),
                        "accumulated coupling phase phi0*t")
            ->expected(1);
        cmd->add_option("--rabi", bind_optional(cfg.rabi), "coupling strength Omega")
            ->expected(1);
        cmd->add_option("--delta", bind_optional(cfg.delta), "detuning Delta")->expected(1);
        if (with_time)
            cmd->add_option("--time", bind_optional(cfg.time), "interaction time")->expected(1);
    };
    const auto add_qubit_options = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha_text, "qubit amplitude of |1+,0->, complex 're+imi'")
            ->required();
        cmd->add_option("--beta", beta_text, "qubit amplitude of |0+,1->, complex 're+imi'")
            ->required();
    };

    CLI::App* cat = app.add_subcommand("cat", "mesoscopic atomic superposition");
    cat->add_option("--n-atoms", cfg.n_atoms, "atom count N (J = N/2)")->required();
    cat->add_option("--theta", cfg.theta, "polar angle of the atomic coherent state")
        ->required();
    cat->add_option("--phi", cfg.phi, "azimuthal angle");
    add_qubit_options(cat);
    add_coupling_options(cat, true);
    add_output_options(cat);

    CLI::App* ghz = app.add_subcommand("ghz", "multi-atom entangled state");
    ghz->add_option("--n-atoms", cfg.n_atoms, "atom count N >= 2")->required();
    ghz->add_option("--theta", cfg.theta, "polar angle")->required();
    ghz->add_option("--phi", cfg.phi, "azimuthal angle");
    add_qubit_options(ghz);
    add_coupling_options(ghz, true);
    add_output_options(ghz);

    CLI::App* trapping = app.add_subcommand("trapping", "interaction-free field evolution");
    trapping->add_option("--n-atoms", cfg.n_atoms, "atom count N")->required();
    trapping->add_option("--theta", cfg.theta, "polar angle")->required();
    trapping->add_option("--phi", cfg.phi, "azimuthal angle");
    add_qubit_options(trapping);
    add_coupling_options(trapping, false);
    add_output_options(trapping);

    CLI::App* holography = app.add_subcommand("holography", "field-qubit storage and retrieval");
    holography->add_option("--n-atoms", cfg.n_atoms, "atom count N")->required();
    holography->add_option("--theta", cfg.theta, "polar angle")->required();
    holography->add_option("--phi", cfg.phi, "azimuthal angle");
    add_qubit_options(holography);
    add_coupling_options(holography, true);
    add_output_options(holography);

    CLI::App* field_cat = app.add_subcommand("field-cat", "cat states of a coherent field");
    field_cat->add_option("--alpha", alpha_text, "coherent amplitude of the + mode")->required();
    field_cat->add_option("--beta", beta_text, "coherent amplitude of the - mode")->required();
    field_cat->add_option("--theta", cfg.theta, "atomic polar angle")->required();
    field_cat->add_option("--phi", cfg.phi, "atomic azimuthal angle");
    field_cat->add_option("--n-max", cfg.n_max, "photon cutoff per mode")->required();
    field_cat->add_option("--basis-angle", cfg.basis_angle,
                          "atomic measurement basis rotation (default pi/4)");
    add_coupling_options(field_cat, true);
    add_output_options(field_cat);

    CLI::App* validate = app.add_subcommand("validate-effective",
                                            "full-model versus effective-coupling comparison");
    validate->add_option("--n-atoms", cfg.n_atoms, "atom count N (default 2)");
    CLI::Option* validate_theta = validate->add_option("--theta", cfg.theta,
                                                       "polar angle (default 1.1)");
    CLI::Option* validate_phi = validate->add_option("--phi", cfg.phi,
                                                     "azimuthal angle (default 0.3)");
    validate->add_option("--alpha", alpha_text, "qubit amplitude (default 0.6)");
    validate->add_option("--beta", beta_text, "qubit amplitude (default 0.8i)");
    validate->add_option("--n-max", cfg.n_max, "photon cutoff (default 1)");
    validate->add_option("--ratio1", cfg.ratio1, "first Delta/Omega point (default 100)");
    validate->add_option("--ratio2", cfg.ratio2, "second Delta/Omega point (default 1000)");
    add_output_options(validate);

    CLI::App* algebra = app.add_subcommand("algebra-check", "operator-algebra residuals");
    CLI::Option* algebra_atoms =
        algebra->add_option("--n-atoms", cfg.n_atoms, "largest 2J to check (default 16)");
    CLI::Option* algebra_cutoff =
        algebra->add_option("--n-max", cfg.n_max, "photon cutoff (default 6)");
    add_output_options(algebra);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("dickesim");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw help_requested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw help_requested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw config_error(e.what());
    }

    cfg.scenario = app.get_subcommands().front()->get_name();

    if (cfg.scenario == "validate-effective") {
        if (validate_theta->count() == 0)
            cfg.theta = 1.1;
        if (validate_phi->count() == 0)
            cfg.phi = 0.3;
        if (alpha_text.empty())
            alpha_text = "0.6";
        if (beta_text.empty())
            beta_text = "0.8i";
    }
    if (cfg.scenario == "algebra-check") {
        if (algebra_atoms->count() == 0)
            cfg.n_atoms = 16;
        if (algebra_cutoff->count() == 0)
            cfg.n_max = 6;
    }

    if (!alpha_text.empty())
        cfg.alpha = parse_complex(alpha_text);
    if (!beta_text.empty())
        cfg.beta = parse_complex(beta_text);

    if (!sweep_text.empty())
        cfg.sweep = parse_sweep_spec(sweep_text);
    cfg.format = format_text == "csv" ? OutputFormat::csv : OutputFormat::json;

    if (cfg.pi_units) {
        cfg.theta *= pi;
        cfg.phi *= pi;
        cfg.basis_angle *= pi;
        if (cfg.phi0t)
            cfg.phi0t = *cfg.phi0t * pi;
        if (cfg.sweep && is_angular_parameter(cfg.sweep->parameter)) {
            cfg.sweep->start *= pi;
            cfg.sweep->stop *= pi;
        }
    }

    // required-parameter sets are checked here, before any physics runs; a
    // sweep over phi0t (or time) supplies the missing piece itself
    const bool coupling_swept =
        cfg.sweep && (cfg.sweep->parameter == "phi0t" || cfg.sweep->parameter == "time");
    if (!coupling_swept) {
        if (cfg.scenario == "cat" || cfg.scenario == "ghz" || cfg.scenario == "holography" ||
            cfg.scenario == "field-cat")
            (void)resolve_coupling(cfg, true);
        else if (cfg.scenario == "trapping")
            (void)resolve_coupling(cfg, false);
    }

    validate_sweep(cfg);
    return cfg;
}

std::vector<RunRecord> run_scenario(const ScenarioConfig& config) {
    validate_sweep(config);
    if (!config.sweep)
        return {single_run(config)};

    const SweepSpec& sweep = *config.sweep;
    std::vector<double> grid(sweep.count);
    for (int i = 0; i < sweep.count; ++i)
        grid[i] = sweep.count == 1
                      ? sweep.start
                      : sweep.start + (sweep.stop - sweep.start) * i / (sweep.count - 1);

    std::vector<RunRecord> records(sweep.count);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < sweep.count; ++i) {
        try {
            ScenarioConfig point = config;
            point.sweep.reset();
            apply_sweep_value(point, sweep.parameter, grid[i]);
            RunRecord record = single_run(point);
            record.doc["config"]["sweep_parameter"] = sweep.parameter;
            record.doc["config"]["sweep_value"] = grid[i];
            records[i] = std::move(record);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return records;
}

namespace {

void flatten_for_csv(const nlohmann::json& object, const std::string& prefix,
                     std::vector<std::string>& header, std::vector<std::string>& row) {
    for (const auto& [key, value] : object.items()) {
        const std::string name = prefix.empty() ? key : prefix + key;
        if (value.is_number() || value.is_string()) {
            header.push_back(name);
            row.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        } else if (value.is_boolean()) {
            header.push_back(name);
            row.push_back(value.get<bool>() ? "1" : "0");
        } else if (value.is_null()) {
            header.push_back(name);
            row.push_back("");
        } else if (value.is_array() && value.size() == 2 && value[0].is_number() &&
                   value[1].is_number()) {
            header.push_back(name + "_re");
            row.push_back(value[0].dump());
            header.push_back(name + "_im");
            row.push_back(value[1].dump());
        }
        // longer arrays (diagnostic distributions) stay JSON-only
    }
}

}  // namespace

std::string serialize(const std::vector<RunRecord>& records, OutputFormat format) {
    if (records.empty())
        throw std::invalid_argument("nothing to serialize");

    if (format == OutputFormat::json) {
        if (records.size() == 1)
            return records.front().doc.dump(2) + "\n";
        nlohmann::json array = nlohmann::json::array();
        for (const RunRecord& record : records)
            array.push_back(record.doc);
        return array.dump(2) + "\n";
    }

    for (const RunRecord& record : records)
        if (record.doc.contains("states"))
            throw config_error(
                "state dumps cannot be serialized to CSV; use --format json or drop "
                "--dump-state");

    std::string text;
    std::vector<std::string> header0;
    for (std::size_t r = 0; r < records.size(); ++r) {
        std::vector<std::string> header, row;
        header.push_back("tool_version");
        row.push_back(records[r].doc["tool_version"].get<std::string>());
        flatten_for_csv(records[r].doc["config"], "", header, row);
        flatten_for_csv(records[r].doc["results"], "", header, row);
        if (r == 0) {
            header0 = header;
            for (std::size_t c = 0; c < header.size(); ++c)
                text += (c ? "," : "") + header[c];
            text += "\n";
        } else if (header != header0) {
            throw std::invalid_argument("sweep records disagree on CSV columns");
        }
        for (std::size_t c = 0; c < row.size(); ++c)
            text += (c ? "," : "") + row[c];
        text += "\n";
    }
    return text;
}

int run_cli(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const ScenarioConfig config = parse_config(args);

        const auto started = std::chrono::steady_clock::now();
        std::vector<RunRecord> records = run_scenario(config);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (config.timing)
            for (RunRecord& record : records)
                record.doc["duration_seconds"] = elapsed;

        const std::string payload = serialize(records, config.format);
        if (config.output.empty()) {
            std::cout << payload;
        } else {
            std::string path = config.output;
            const char* out_dir = std::getenv(kOutputDirEnvVar);
            if (out_dir != nullptr && *out_dir != '\0' && path.front() != '/')
                path = std::string(out_dir) + "/" + path;
            std::ofstream file(path, std::ios::binary);
            if (!file)
                throw std::runtime_error("cannot open output file " + path);
            file << payload;
        }
        return 0;
    } catch (const help_requested& help) {
        std::cout << help.what();
        return 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const guard_error& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dicke::io

#include <complex>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "anyonforge/anyon_model.hpp"
#include "anyonforge/braid_sim.hpp"
#include "anyonforge/consistency.hpp"
#include "anyonforge/fusion_space.hpp"
#include "anyonforge/lattice_defect.hpp"

namespace {

using anyonforge::Complex;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

json complex_to_json(Complex v) {
    return json::array({v.real(), v.imag()});
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(row);
    }
    return rows;
}

void emit(const json& payload, bool pretty) {
    if (pretty) {
        std::cout << payload.dump(2) << "\n";
    } else {
        std::cout << payload.dump() << "\n";
    }
}

int emit_error(const std::string& code, const std::string& message, bool pretty, int exit_code) {
    json payload = {{"status", "error"}, {"code", code}, {"message", message}};
    emit(payload, pretty);
    std::cerr << "error: " << message << "\n";
    return exit_code;
}

json solve_f_payload() {
    const Eigen::Matrix2cd f = anyonforge::solve_defect_f();
    const anyonforge::FSymbolSet symbols = anyonforge::defect_f_symbols();
    return json{{"status", "ok"},
                {"f_matrix", matrix_to_json(f)},
                {"basis", json::array({"1", "f"})},
                {"max_pentagon_residual", anyonforge::pentagon_sweep_max(symbols)}};
}

json solve_r_payload() {
    const Eigen::Matrix2cd f = anyonforge::solve_defect_f();
    const auto solved = anyonforge::solve_defect_r(f);
    json solutions = json::array();
    for (size_t i = 0; i < solved.solutions.size(); ++i) {
        const auto& sol = solved.solutions[i];
        solutions.push_back({{"r_vacuum", complex_to_json(sol.vacuum)},
                             {"r_fermion", complex_to_json(sol.fermion)},
                             {"r_defect_past_fermion", complex_to_json(sol.past_fermion)},
                             {"canonical", static_cast<int>(i) == solved.canonical_index},
                             {"max_reduced_residual",
                              anyonforge::reduced_hexagon_residual(sol, f)}});
    }
    const auto f_symbols = anyonforge::defect_f_symbols();
    const auto r_symbols = anyonforge::defect_r_symbols();
    return json{{"status", "ok"},
                {"r_matrix", matrix_to_json(solved.canonical().matrix())},
                {"solutions", solutions},
                {"max_hexagon_residual", anyonforge::defect_hexagon_max(f_symbols, r_symbols)}};
}

json gate_payload(double tol) {
    json gates = json::array();
    bool all_pass = true;
    for (const auto& spec : anyonforge::gate_library()) {
        const Eigen::Matrix4cd compiled = anyonforge::compile(spec.word);
        const auto eq = anyonforge::equiv_up_to_phase(compiled, spec.reference, tol);
        all_pass = all_pass && eq.equivalent;
        gates.push_back({{"name", spec.name},
                         {"word", spec.word.str()},
                         {"fidelity", eq.fidelity},
                         {"pass", eq.equivalent}});
    }
    return json{{"status", all_pass ? "ok" : "error"}, {"tol", tol}, {"gates", gates}};
}

Eigen::Vector4cd parse_state(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_array() || doc.size() != 4) {
        throw std::invalid_argument("state must be a JSON array of 4 entries");
    }
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) {
        const auto& entry = doc.at(i);
        if (entry.is_number()) {
            v(i) = Complex(entry.get<double>(), 0.0);
        } else {
            v(i) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return v;
}

std::uint64_t sampling_seed() {
    if (const char* env = std::getenv("ANYON_FORGE_SEED")) {
        return std::stoull(env);
    }
    return 12345;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twist-defect quantum computation on the Z2 anyon model"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    auto* solve = app.add_subcommand("solve", "solve the defect consistency equations");
    std::string what;
    solve->add_option("--what", what, "f or r")->required();

    auto* verify = app.add_subcommand("verify-gates", "check the braid-word gate set");
    double tol = 1e-10;
    verify->add_option("--tol", tol, "projective fidelity tolerance");

    auto* compile_cmd = app.add_subcommand("compile", "compile a braid word to a unitary");
    std::string word_text;
    compile_cmd->add_option("word", word_text, "braid word, e.g. \"s1 s2 s1\"");
    std::string state_text;
    compile_cmd->add_option("--state", state_text, "input state as a JSON array of [re,im]");
    bool do_measure = false;
    compile_cmd->add_flag("--measure", do_measure, "emit the output distribution");
    std::int64_t samples = 0;
    compile_cmd->add_option("--samples", samples, "sample N measurement shots");

    auto* grover = app.add_subcommand("grover", "run one braided search iteration");
    std::string target = "00";
    grover->add_option("--target", target, "target outcome: 00, 01, 10 or 11");

    auto* lattice_cmd = app.add_subcommand("lattice", "verify a defect operator on a patch");
    int width = 0, height = 0;
    lattice_cmd->add_option("--width", width, "faces per row")->required();
    lattice_cmd->add_option("--height", height, "faces per column")->required();
    std::string boundaries = "smooth;smooth;smooth;smooth";
    lattice_cmd->add_option("--boundaries", boundaries,
                            "top;bottom;left;right, each a comma list of smooth/rough cells");
    std::vector<int> support;
    lattice_cmd->add_option("--support", support, "five site indices carrying X Y Z Z Z")
        ->expected(5);

    auto* model_cmd = app.add_subcommand("model", "anyon model utilities");
    auto* validate_cmd = model_cmd->add_subcommand("validate", "check fusion-ring laws");
    std::string model_path;
    validate_cmd->add_option("path", model_path, "model JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return emit_error("usage", e.what(), pretty, kExitUsage);
    }

    try {
        if (solve->parsed()) {
            if (what == "f") {
                emit(solve_f_payload(), pretty);
            } else if (what == "r") {
                emit(solve_r_payload(), pretty);
            } else {
                return emit_error("usage", "--what must be 'f' or 'r', got '" + what + "'", pretty,
                                  kExitUsage);
            }
            return kExitOk;
        }
        if (verify->parsed()) {
            const json payload = gate_payload(tol);
            emit(payload, pretty);
            return payload.at("status") == "ok" ? kExitOk : kExitError;
        }
        if (compile_cmd->parsed()) {
            anyonforge::BraidWord word;
            try {
                word = anyonforge::BraidWord::parse(word_text);
            } catch (const anyonforge::BraidParseError& e) {
                return emit_error("parse", e.what(), pretty, kExitError);
            }
            const Eigen::Matrix4cd u = anyonforge::compile(word);
            json payload = {{"status", "ok"},
                            {"word", word.str()},
                            {"unitary", matrix_to_json(u)}};
            if (!state_text.empty() || do_measure || samples > 0) {
                anyonforge::FusionBasisState input = anyonforge::FusionBasisState::computational(0);
                if (!state_text.empty()) {
                    input.amplitudes = parse_state(state_text);
                }
                const auto output = anyonforge::simulate(word, input);
                payload["state_out"] = matrix_to_json(output.amplitudes);
                const auto dist = anyonforge::measure(output);
                payload["distribution"] = dist.distribution;
                if (samples > 0) {
                    const auto counts = anyonforge::sample_counts(dist, samples, sampling_seed());
                    payload["samples"] = counts;
                    payload["seed"] = sampling_seed();
                }
            }
            emit(payload, pretty);
            return kExitOk;
        }
        if (grover->parsed()) {
            int target_index = -1;
            const std::vector<std::string> outcomes = {"00", "01", "10", "11"};
            for (size_t i = 0; i < outcomes.size(); ++i) {
                if (outcomes[i] == target) {
                    target_index = static_cast<int>(i);
                }
            }
            if (target_index < 0) {
                return emit_error("usage", "--target must be one of 00, 01, 10, 11", pretty,
                                  kExitUsage);
            }
            const auto run = anyonforge::grover_braid(target_index);
            emit(json{{"status", "ok"},
                      {"target", target},
                      {"word", run.word.str()},
                      {"distribution", run.result.distribution},
                      {"p_target", run.result.distribution[target_index]}},
                 pretty);
            return kExitOk;
        }
        if (lattice_cmd->parsed()) {
            anyonforge::BoundarySpec spec;
            try {
                spec = anyonforge::parse_boundary_spec(boundaries);
            } catch (const std::invalid_argument& e) {
                return emit_error("usage", e.what(), pretty, kExitUsage);
            }
            const auto lattice = anyonforge::build_patch(width, height, spec);
            json payload = {{"status", "ok"},
                            {"num_sites", lattice.num_sites()},
                            {"sites", lattice.site_names()},
                            {"num_stabilizers", lattice.stabilizers().size()}};
            if (!support.empty()) {
                std::array<int, 5> sites{};
                std::copy_n(support.begin(), 5, sites.begin());
                payload["defect"] = anyonforge::defect_operator(lattice, sites).str();
                payload["violations"] = anyonforge::verify_defect(lattice, sites);
            }
            emit(payload, pretty);
            return kExitOk;
        }
        if (validate_cmd->parsed()) {
            const auto model = anyonforge::AnyonModel::load_file(model_path);
            const auto violations = model.validate();
            json payload = {{"status", violations.empty() ? "ok" : "error"},
                            {"valid", violations.empty()},
                            {"violations", violations}};
            if (model.modular()) {
                const auto report = model.verify_modular();
                payload["modular_violations"] = report.violations;
                payload["verlinde_deviation"] = report.verlinde_deviation;
                if (!report.ok()) {
                    payload["status"] = "error";
                }
            }
            emit(payload, pretty);
            return payload.at("status") == "ok" ? kExitOk : kExitError;
        }
        return emit_error("usage", "no subcommand", pretty, kExitUsage);
    } catch (const std::invalid_argument& e) {
        return emit_error("invalid_parameter", e.what(), pretty, kExitError);
    } catch (const std::out_of_range& e) {
        return emit_error("invalid_parameter", e.what(), pretty, kExitError);
    } catch (const std::exception& e) {
        return emit_error("internal", e.what(), pretty, kExitError);
    }
}

// Command-line front end: preset catalog, decision subcommands, certificate
// verification, tensor-product checks and batch experiment runs. All verdicts
// are canonical JSON on stdout; timing and progress go to stderr when
// GPTLAB_LOG is set. Exit codes: 0 = YES, 1 = NO, 2 = error or inapplicable.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "gptlab/serialization.hpp"

using namespace gptlab;
namespace io = gptlab::io;
using io::Json;

namespace {

bool logging_enabled() {
    const char* env = std::getenv("GPTLAB_LOG");
    return env && *env;
}

class Stopwatch {
  public:
    explicit Stopwatch(std::string label) : label_(std::move(label)), start_(clock::now()) {}
    ~Stopwatch() {
        if (!logging_enabled()) return;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start_);
        std::cerr << "[gptlab] " << label_ << ": " << ms.count() << " ms\n";
    }

  private:
    using clock = std::chrono::steady_clock;
    std::string label_;
    clock::time_point start_;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

struct TheorySource {
    std::string preset;
    std::string file;
    std::string measurements_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "built-in theory preset name");
        cmd->add_option("--theory", file, "theory JSON file");
        cmd->add_option("--measurements", measurements_file,
                        "JSON list of measurements overriding the theory's own");
    }

    RestrictedTheory load() const {
        if (preset.empty() == file.empty())
            throw std::runtime_error("pass exactly one of --preset / --theory");
        RestrictedTheory t =
            preset.empty() ? io::theory_from_json(read_json_file(file)) : presets::theory_preset(preset);
        if (!measurements_file.empty()) {
            t.M = io::measurements_from_json(read_json_file(measurements_file));
            validate_theory(t);
        }
        return t;
    }

    Json as_inputs(const RestrictedTheory& t) const { return io::theory_to_json(t); }
};

struct ScenarioSource {
    std::string preset;
    std::string file;
    std::string ambient;

    void attach(CLI::App* cmd, bool with_ambient = true) {
        cmd->add_option("--preset", preset, "built-in scenario preset name");
        cmd->add_option("--scenario", file, "scenario JSON file");
        if (with_ambient)
            cmd->add_option("--ambient", ambient, "ambient override for presets: min|max");
    }

    SteeringScenario load() const {
        if (preset.empty() == file.empty())
            throw std::runtime_error("pass exactly one of --preset / --scenario");
        if (!preset.empty()) {
            std::optional<AmbientKind> override;
            if (ambient == "min") override = AmbientKind::Minimal;
            else if (ambient == "max") override = AmbientKind::Maximal;
            else if (!ambient.empty()) throw std::runtime_error("--ambient must be min or max");
            return presets::scenario_preset(preset, override);
        }
        if (!ambient.empty()) throw std::runtime_error("--ambient applies to presets only");
        return io::scenario_from_json(read_json_file(file));
    }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit_verdict(io::Verdict v) {
    emit(io::verdict_to_json(v));
    return v.answer ? 0 : 1;
}

int run_compat(const TheorySource& src, bool within_e) {
    Stopwatch watch(within_e ? "compat" : "ek-compat");
    RestrictedTheory t = src.load();
    if (!t.M || t.M->empty()) throw std::runtime_error("theory carries no measurements to test");
    CompatOutcome out =
        within_e ? e_compatible(t.K, t.E, *t.M) : ek_compatible(t.K, *t.M);
    io::Verdict v;
    v.question = within_e ? "E-compat" : "EK-compat";
    v.answer = out.compatible;
    v.inputs = src.as_inputs(t);
    if (out.cert) v.certificate = io::joint_cert_to_json(*out.cert);
    if (out.farkas) v.farkas = io::farkas_to_json(*out.farkas);
    return emit_verdict(std::move(v));
}

int run_embed(const TheorySource& src) {
    Stopwatch watch("embed");
    RestrictedTheory t = src.load();
    EmbedOutcome out = simplex_embeddable(t.K, t.E);
    io::Verdict v;
    v.question = "embed";
    v.answer = out.embeddable;
    v.inputs = src.as_inputs(t);
    if (out.cert) v.certificate = io::embed_cert_to_json(*out.cert);
    if (out.farkas) v.farkas = io::farkas_to_json(*out.farkas);
    return emit_verdict(std::move(v));
}

int run_prep_nc(const TheorySource& src) {
    Stopwatch watch("prep-nc");
    RestrictedTheory t = src.load();
    PrepNCOutcome out = prep_noncontextual(t);
    io::Verdict v;
    v.question = "prep-nc";
    v.answer = out.noncontextual;
    v.inputs = src.as_inputs(t);
    if (out.model) v.certificate = io::joint_cert_to_json(*out.model);
    if (out.farkas) v.farkas = io::farkas_to_json(*out.farkas);
    return emit_verdict(std::move(v));
}

int run_steer(const ScenarioSource& src, const std::string& sweep) {
    Stopwatch watch("steer");
    SteeringScenario sc = src.load();
    if (!sweep.empty()) {
        // CSV sweep over the isotropic family: "lo:hi:steps".
        auto c1 = sweep.find(':');
        auto c2 = sweep.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("--sweep-gamma wants lo:hi:steps");
        Rat lo = rat_from_string(sweep.substr(0, c1));
        Rat hi = rat_from_string(sweep.substr(c1 + 1, c2 - c1 - 1));
        int steps = std::stoi(sweep.substr(c2 + 1));
        std::cout << "gamma,lhs\n";
        for (int i = 0; i <= steps; ++i) {
            Rat gamma = lo + (hi - lo) * Rat(i) / Rat(steps);
            sc.rho = presets::isotropic_tensor(sc.sys, gamma);
            LHSOutcome out = has_lhs_model(sc.sys, assemblage(sc));
            std::cout << rat_to_string(gamma) << "," << (out.has_model ? 1 : 0) << "\n";
        }
        return 0;
    }
    LHSOutcome out = has_lhs_model(sc.sys, assemblage(sc));
    io::Verdict v;
    v.question = "steer";
    v.answer = out.has_model;
    v.inputs = io::scenario_to_json(sc);
    if (out.cert) v.certificate = io::lhs_cert_to_json(*out.cert);
    if (out.farkas) v.farkas = io::farkas_to_json(*out.farkas);
    return emit_verdict(std::move(v));
}

Json report_to_json(const CrosscheckReport& report) {
    Json j;
    j["applicable"] = report.applicable;
    if (report.applicable) {
        j["lhs"] = report.lhs;
        j["prep_nc"] = report.prep_nc;
        j["agree"] = report.agree;
        if (report.lhs_outcome.cert) j["lhs_certificate"] = io::lhs_cert_to_json(*report.lhs_outcome.cert);
        if (report.lhs_outcome.farkas) j["lhs_farkas"] = io::farkas_to_json(*report.lhs_outcome.farkas);
        if (report.prep_outcome.model)
            j["prep_nc_certificate"] = io::joint_cert_to_json(*report.prep_outcome.model);
        if (report.prep_outcome.farkas)
            j["prep_nc_farkas"] = io::farkas_to_json(*report.prep_outcome.farkas);
    }
    return j;
}

int run_crosscheck(const ScenarioSource& src, int random_count, uint64_t seed, int jobs) {
    Stopwatch watch("crosscheck");
    if (random_count > 0) {
        std::vector<char> agree(static_cast<size_t>(random_count), 0);
        std::vector<char> lhs_yes(static_cast<size_t>(random_count), 0);
        auto worker = [&](int begin, int end) {
            for (int i = begin; i < end; ++i) {
                std::mt19937_64 rng(seed + static_cast<uint64_t>(i));
                SteeringScenario sc = presets::random_full_dimensional_scenario(rng);
                CrosscheckReport report = steering_crosscheck(sc);
                agree[static_cast<size_t>(i)] = report.agree ? 1 : 0;
                lhs_yes[static_cast<size_t>(i)] = report.lhs ? 1 : 0;
            }
        };
        jobs = std::max(1, jobs);
        std::vector<std::thread> pool;
        int chunk = (random_count + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            int begin = t * chunk, end = std::min(random_count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
        int agreed = 0, yes = 0;
        for (char c : agree) agreed += c;
        for (char c : lhs_yes) yes += c;
        Json j;
        j["instances"] = random_count;
        j["seed"] = seed;
        j["agreements"] = agreed;
        j["unsteerable"] = yes;
        j["steerable"] = random_count - yes;
        emit(j);
        return agreed == random_count ? 0 : 1;
    }
    SteeringScenario sc = src.load();
    CrosscheckReport report = steering_crosscheck(sc);
    emit(report_to_json(report));
    if (!report.applicable) return 2;
    return report.agree ? 0 : 1;
}

int run_verify(const std::string& path) {
    Stopwatch watch("verify");
    bool ok = io::verify_verdict(read_json_file(path));
    std::cout << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 1;
}

StateSpace load_state_space(const std::string& ref) {
    if (presets::is_theory_preset(presets::parse_preset_name(ref).name))
        return presets::theory_preset(ref).K;
    return io::theory_from_json(read_json_file(ref)).K;
}

int run_tensor(const std::string& a_ref, const std::string& b_ref, const std::string& check,
               const std::string& emit_kind) {
    Stopwatch watch("tensor");
    BipartiteSystem sys = make_system(load_state_space(a_ref), load_state_space(b_ref));
    if (!emit_kind.empty()) {
        TensorProductSpace space =
            emit_kind == "min" ? minimal_tensor(sys) : maximal_tensor(sys);
        emit(io::polytope_to_json(with_vrep(space.body)));
        return 0;
    }
    if (check == "equal") {
        bool equal = same_polytope(minimal_tensor(sys).body, maximal_tensor(sys).body);
        Json j;
        j["check"] = "equal";
        j["answer"] = equal;
        emit(j);
        return equal ? 0 : 1;
    }
    if (check == "sandwich") {
        bool ok = true;
        Polytope min_body = with_vrep(minimal_tensor(sys).body);
        for (const QVec& v : min_body.vertices())
            if (!in_maximal(sys, unflatten(v, sys.basis_a.size(), sys.basis_b.size()))) ok = false;
        Json j;
        j["check"] = "sandwich";
        j["answer"] = ok;
        emit(j);
        return ok ? 0 : 1;
    }
    throw std::runtime_error("--check must be equal or sandwich");
}

int run_chsh(const ScenarioSource& src, const std::string& bob_file) {
    Stopwatch watch("chsh");
    SteeringScenario sc = src.load();
    if (sc.alice.size() < 2) throw std::runtime_error("chsh needs two settings on side A");
    std::vector<Measurement> bob;
    if (!bob_file.empty()) {
        bob = io::measurements_from_json(read_json_file(bob_file));
    } else if (sc.sys.B.ambient_dim() == sc.sys.A.ambient_dim()) {
        bob = {sc.alice[0], sc.alice[1]};
    } else {
        throw std::runtime_error("sides differ; pass --bob with two measurements for B");
    }
    if (bob.size() < 2) throw std::runtime_error("chsh needs two settings on side B");
    for (const Measurement& m : bob) validate_measurement(sc.sys.B, m);
    Rat value = chsh_value(sc.sys, sc.rho, sc.alice[0], sc.alice[1], bob[0], bob[1]);
    Json j;
    j["chsh"] = io::rat_to_json(value);
    emit(j);
    return 0;
}

int run_preset(const std::string& name, const std::string& ambient) {
    Stopwatch watch("preset");
    presets::ParsedPreset parsed = presets::parse_preset_name(name);
    if (presets::is_theory_preset(parsed.name)) {
        emit(io::theory_to_json(presets::theory_preset(name)));
        return 0;
    }
    if (presets::is_scenario_preset(parsed.name)) {
        std::optional<AmbientKind> override;
        if (ambient == "min") override = AmbientKind::Minimal;
        else if (ambient == "max") override = AmbientKind::Maximal;
        else if (!ambient.empty()) throw std::runtime_error("--ambient must be min or max");
        emit(io::scenario_to_json(presets::scenario_preset(name, override)));
        return 0;
    }
    throw std::runtime_error("unknown preset: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision procedures for restricted polytopic theories"};
    app.require_subcommand(1);

    auto* preset_cmd = app.add_subcommand("preset", "emit a built-in theory or scenario as JSON");
    std::string preset_name, preset_ambient;
    preset_cmd->add_option("name", preset_name, "preset name, e.g. square_in_square")->required();
    preset_cmd->add_option("--ambient", preset_ambient, "scenario ambient: min|max");

    TheorySource compat_src, ek_src, embed_src, prep_src;
    auto* compat_cmd = app.add_subcommand("compat", "joint measurability within the allowed effects");
    compat_src.attach(compat_cmd);
    auto* ek_cmd = app.add_subcommand("ek-compat", "joint measurability within the full effect algebra");
    ek_src.attach(ek_cmd);
    auto* embed_cmd = app.add_subcommand("embed", "simplex embeddability of a restricted theory");
    embed_src.attach(embed_cmd);
    auto* prep_cmd = app.add_subcommand("prep-nc", "preparation-noncontextual model existence");
    prep_src.attach(prep_cmd);

    ScenarioSource steer_src, cross_src, chsh_src;
    std::string sweep;
    auto* steer_cmd = app.add_subcommand("steer", "local-hidden-state model existence");
    steer_src.attach(steer_cmd);
    steer_cmd->add_option("--sweep-gamma", sweep, "CSV sweep lo:hi:steps over the isotropic family");

    auto* cross_cmd = app.add_subcommand("crosscheck",
                                         "steering vs induced-theory noncontextuality agreement");
    cross_src.attach(cross_cmd);
    int random_count = 0, jobs = 1;
    uint64_t seed = 1;
    cross_cmd->add_option("--random", random_count, "run N seeded random full-dimensional scenarios");
    cross_cmd->add_option("--seed", seed, "base seed for --random");
    cross_cmd->add_option("--jobs", jobs, "parallel workers for --random");

    auto* verify_cmd = app.add_subcommand("verify", "re-check a verdict file independently");
    std::string verify_path;
    verify_cmd->add_option("file", verify_path, "verdict JSON file")->required();

    auto* tensor_cmd = app.add_subcommand("tensor", "minimal/maximal composite checks");
    std::string tensor_a, tensor_b, tensor_check = "equal", tensor_emit;
    tensor_cmd->add_option("--a", tensor_a, "theory preset or file for side A")->required();
    tensor_cmd->add_option("--b", tensor_b, "theory preset or file for side B")->required();
    tensor_cmd->add_option("--check", tensor_check, "equal|sandwich");
    tensor_cmd->add_option("--emit", tensor_emit, "emit the min|max composite polytope instead");

    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH value of a scenario");
    chsh_src.attach(chsh_cmd);
    std::string bob_file;
    chsh_cmd->add_option("--bob", bob_file, "JSON list with B's two measurements");

    CLI11_PARSE(app, argc, argv);

    try {
        if (preset_cmd->parsed()) return run_preset(preset_name, preset_ambient);
        if (compat_cmd->parsed()) return run_compat(compat_src, true);
        if (ek_cmd->parsed()) return run_compat(ek_src, false);
        if (embed_cmd->parsed()) return run_embed(embed_src);
        if (prep_cmd->parsed()) return run_prep_nc(prep_src);
        if (steer_cmd->parsed()) return run_steer(steer_src, sweep);
        if (cross_cmd->parsed()) return run_crosscheck(cross_src, random_count, seed, jobs);
        if (verify_cmd->parsed()) return run_verify(verify_path);
        if (tensor_cmd->parsed()) return run_tensor(tensor_a, tensor_b, tensor_check, tensor_emit);
        if (chsh_cmd->parsed()) return run_chsh(chsh_src, bob_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpv/complexfn.hpp"
#include "dpv/errors.hpp"
#include "dpv/hamiltonians.hpp"
#include "dpv/model.hpp"
#include "dpv/orbit.hpp"
#include "dpv/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSingularOrbit = 3;

// Complex arguments come as "re,im" or a bare "re".
dpv::Complex parse_complex(const std::string& text) {
    const char* s = text.c_str();
    char* end = nullptr;
    double re = std::strtod(s, &end);
    if (end == s) throw std::invalid_argument("complex value expected as re,im: " + text);
    if (*end == '\0') return {re, 0.0};
    if (*end != ',') throw std::invalid_argument("complex value expected as re,im: " + text);
    const char* s2 = end + 1;
    double im = std::strtod(s2, &end);
    if (end == s2 || *end != '\0')
        throw std::invalid_argument("complex value expected as re,im: " + text);
    return {re, im};
}

dpv::FdConfig fd_from_env() {
    dpv::FdConfig cfg;
    if (const char* v = std::getenv("DP_FD_STEP")) {
        char* end = nullptr;
        double h = std::strtod(v, &end);
        if (end == v || *end != '\0' || !(h > 0.0) || h > 1e-2)
            throw std::invalid_argument(
                std::string("DP_FD_STEP must be a step size in (0, 1e-2], got \"") + v + "\"");
        cfg.base_step = h;
    }
    return cfg;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << text;
}

int cmd_verify(const std::string& spec_path, const std::vector<std::string>& check_names, int n,
               std::uint64_t seed, const std::string& out_path) {
    dpv::EquationSpec spec = dpv::load_spec_file(spec_path);
    std::vector<dpv::CheckKind> checks;
    if (check_names.empty()) {
        checks = dpv::applicable_checks(spec.surface);
        if (checks.empty())
            throw std::invalid_argument("no applicable checks: " + dpv::to_string(spec.surface) +
                                        " carries only a chart");
    } else {
        for (const std::string& name : check_names) {
            auto k = dpv::check_from_string(name);
            if (!k) throw std::invalid_argument("unknown check \"" + name + "\"");
            checks.push_back(*k);
        }
    }
    dpv::FdConfig fd = fd_from_env();
    std::vector<dpv::VerificationReport> reports;
    reports.reserve(checks.size());
    for (dpv::CheckKind k : checks) reports.push_back(dpv::run_check(spec, k, n, seed, fd));
    write_output(out_path, dpv::reports_to_json(reports));
    for (const auto& r : reports)
        if (!r.pass()) return kExitCheckFailed;
    return kExitPass;
}

int cmd_orbit(const std::string& spec_path, const std::string& f0, const std::string& g0,
              int steps, const std::string& out_path) {
    dpv::EquationSpec spec = dpv::load_spec_file(spec_path);
    dpv::PhasePoint start{parse_complex(f0), parse_complex(g0)};
    dpv::OrbitRecord rec = dpv::iterate(spec, start, steps);
    write_output(out_path, dpv::orbit_to_csv(rec));
    if (rec.terminated_by == dpv::OrbitTermination::completed) return kExitPass;
    std::string why = dpv::to_string(rec.terminated_by);
    if (rec.singular_info)
        why += " at step " + std::to_string(rec.singular_info->step_index) + ", denominator \"" +
               rec.singular_info->denominator + "\"";
    std::fprintf(stderr, "orbit terminated: %s\n", why.c_str());
    return kExitSingularOrbit;
}

int cmd_li2(const std::string& z_text) {
    dpv::Complex v = dpv::li2(parse_complex(z_text));
    std::printf("%.17g %.17g\n", v.real(), v.imag());
    return kExitPass;
}

int cmd_hamiltonian(const std::string& spec_path, const std::string& f_text,
                    const std::string& gbar_text, bool grad) {
    dpv::EquationSpec spec = dpv::load_spec_file(spec_path);
    dpv::Complex f = parse_complex(f_text);
    dpv::Complex gbar = parse_complex(gbar_text);
    dpv::WValue w = dpv::eval_W(spec, f, gbar);
    std::printf("%.17g %.17g\n", w.value.real(), w.value.imag());
    if (grad) {
        auto [wf, wg] = dpv::grad_W(spec, f, gbar);
        std::printf("%.17g %.17g\n", wf.real(), wf.imag());
        std::printf("%.17g %.17g\n", wg.real(), wg.imag());
    }
    if (w.branch_note) std::fprintf(stderr, "%s\n", w.branch_note->c_str());
    return kExitPass;
}

int cmd_list() {
    for (dpv::SurfaceType s : dpv::all_surface_types()) {
        std::string params;
        for (const std::string& name : dpv::required_params(s)) {
            if (!params.empty()) params += ",";
            params += name;
        }
        if (params.empty()) params = "-";
        std::printf("%-10s %-14s %s\n", dpv::to_string(s).c_str(),
                    dpv::to_string(dpv::family_of(s)).c_str(), params.c_str());
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete Painleve maps: verification, orbits, special functions"};
    app.require_subcommand(1);

    std::string spec_path;
    std::vector<std::string> check_names;
    int n = 100;
    std::uint64_t seed = 1;
    std::string out_path;
    auto* verify = app.add_subcommand("verify", "run identity checks against a spec");
    verify->add_option("--spec", spec_path, "equation spec JSON file")->required();
    verify->add_option("--checks", check_names,
                       "check names (default: every applicable check)")
        ->delimiter(',');
    verify->add_option("--n", n, "sample points per check");
    verify->add_option("--seed", seed, "sampler seed");
    verify->add_option("--out", out_path, "report file (default: stdout)");

    std::string f0 = "0,0";
    std::string g0 = "0,0";
    int steps = 1;
    auto* orbit = app.add_subcommand("orbit", "iterate the map and export CSV");
    orbit->add_option("--spec", spec_path, "equation spec JSON file")->required();
    orbit->add_option("--f0", f0, "initial f as re,im");
    orbit->add_option("--g0", g0, "initial g as re,im");
    orbit->add_option("--steps", steps, "number of steps (>= 1)");
    orbit->add_option("--out", out_path, "CSV file (default: stdout)");

    std::string z_text;
    auto* li2cmd = app.add_subcommand("li2", "evaluate the dilogarithm");
    li2cmd->add_option("--z", z_text, "argument as re,im")->required();

    std::string f_text;
    std::string gbar_text;
    bool grad = false;
    auto* ham = app.add_subcommand("hamiltonian", "evaluate the discrete Hamiltonian W");
    ham->add_option("--spec", spec_path, "equation spec JSON file")->required();
    ham->add_option("--f", f_text, "f as re,im")->required();
    ham->add_option("--gbar", gbar_text, "gbar as re,im")->required();
    ham->add_flag("--grad", grad, "also print dW/df and dW/dgbar");

    auto* list = app.add_subcommand("list", "list supported surface types");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (verify->parsed()) return cmd_verify(spec_path, check_names, n, seed, out_path);
        if (orbit->parsed()) return cmd_orbit(spec_path, f0, g0, steps, out_path);
        if (li2cmd->parsed()) return cmd_li2(z_text);
        if (ham->parsed()) return cmd_hamiltonian(spec_path, f_text, gbar_text, grad);
        if (list->parsed()) return cmd_list();
    } catch (const dpv::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}

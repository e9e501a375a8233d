#include "bethe/cba.hpp"
#include "bethe/index.hpp"
#include "bethe/io.hpp"
#include "bethe/synth.hpp"
#include "bethe/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

enum Exit { ok = 0, check_failure = 1, invalid_input = 2 };

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bethe::InvalidInput("cannot write '" + path + "'");
    out << text;
}

std::string basis_string(const bethe::MagnonString& s) {
    std::string bits(static_cast<std::size_t>(s.k), '0');
    for (int p : s.positions) bits[static_cast<std::size_t>(p - 1)] = '1';
    return bits;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bethe-state circuit synthesis for the XXZ chain"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool homogeneous = false;
    int k = 0;
    int r = 0;
    std::vector<int> selection;

    auto* synth = app.add_subcommand("synth", "synthesise the circuit and write it to --out");
    synth->add_option("--config", config_path, "JSON problem file")->required();
    synth->add_option("--out", out_path, "circuit file (stdout if omitted)");

    auto* verify = app.add_subcommand("verify", "run the property battery");
    verify->add_option("--config", config_path, "JSON problem file (seeded N=6, M=2 demo if omitted)");
    verify->add_option("--out", out_path, "JSON report path");
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_option("--tol", tol, "override every check tolerance");
    verify->add_flag("--homogeneous", homogeneous, "set v_j = 0 and add the homogeneous-chain equivalences");

    auto* state = app.add_subcommand("state", "dump sector amplitudes of a Bethe state");
    state->add_option("--config", config_path, "JSON problem file")->required();
    state->add_option("--out", out_path, "output path (stdout if omitted)");
    state->add_option("--k", k, "support: the last k spins")->required();
    state->add_option("--r", r, "number of magnons in the state")->required();
    state->add_option("--select", selection, "magnon labels (1-based)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid_input;
    }

    try {
        if (synth->parsed()) {
            auto cfg = bethe::load_config(config_path);
            if (out_path.empty()) out_path = cfg.out;
            if (cfg.spec.n_magnons == 0) std::cerr << "warning: M = 0, every gate is the identity\n";
            const auto circuit = bethe::synthesize_circuit(cfg.spec);
            write_output(out_path, bethe::export_circuit(circuit, cfg.spec));
            return ok;
        }
        if (verify->parsed()) {
            bethe::RunConfig cfg = config_path.empty() ? bethe::demo_config(seed.value_or(1), homogeneous)
                                                       : bethe::load_config(config_path);
            if (seed) cfg.seed = *seed;
            if (tol) cfg.check_tol = *tol;
            const auto report = bethe::run_verification(cfg, homogeneous);
            std::cout << report.text();
            if (!out_path.empty()) write_output(out_path, report.json());
            return report.pass() ? ok : check_failure;
        }
        if (state->parsed()) {
            auto cfg = bethe::load_config(config_path);
            if (static_cast<int>(selection.size()) != r)
                throw bethe::InvalidInput("state: --select must list exactly r magnon labels");
            const auto st = bethe::bethe_state_explicit(k, selection, cfg.spec);
            const auto basis = bethe::sector_basis(k, r);
            std::string text;
            char buf[128];
            for (std::size_t i = 0; i < basis.size(); ++i) {
                const auto a = st.amplitudes(static_cast<Eigen::Index>(i));
                std::snprintf(buf, sizeof buf, " %.17g %.17g\n", a.real(), a.imag());
                text += basis_string(basis[i]) + buf;
            }
            write_output(out_path, text);
            return ok;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid_input;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid_input;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid_input;
    }
    return invalid_input;
}

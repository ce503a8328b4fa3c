// Copyright 2026 The mcphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcphase/errors.h"
#include "mcphase/io.h"

namespace fs = std::filesystem;
using namespace mcp;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_port_list(const std::string &text) {
    std::vector<int> ports;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        int p = 0;
        try {
            p = std::stoi(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) {
            throw ValidationError("bad port list \"" + text + "\"");
        }
        ports.push_back(p);
    }
    if (ports.empty()) {
        throw ValidationError("empty port list");
    }
    return ports;
}

std::pair<size_t, size_t> parse_range(const std::string &text) {
    auto num = [&](const std::string &s) -> size_t {
        size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw UsageError("bad --n-range \"" + text + "\"; expected N or A..B");
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const size_t n = num(text);
        return {n, n};
    }
    const size_t lo = num(text.substr(0, dots));
    const size_t hi = num(text.substr(dots + 2));
    if (lo > hi) {
        throw UsageError("empty --n-range \"" + text + "\"");
    }
    return {lo, hi};
}

class Run {
   public:
    explicit Run(std::string command) { m_.command = std::move(command); }

    std::string read(const std::string &path) {
        std::string text = read_text_file(path);
        m_.inputs.emplace_back(path, fnv1a64_hex(text));
        return text;
    }
    Json read_json(const std::string &path) {
        const std::string text = read(path);
        try {
            return Json::parse(text);
        } catch (const Json::parse_error &e) {
            throw ValidationError(path + ": malformed JSON: " + e.what());
        }
    }
    void seed(uint64_t s) { m_.seed = s; }
    Json &parameters() { return m_.parameters; }

    // Every output gets a sibling <path>.manifest.json.
    void write(const std::string &path, const std::string &text) {
        write_text_file(path, text);
        m_.outputs.emplace_back(path, fnv1a64_hex(text));
        RunManifest m = m_;
        m.outputs = {m_.outputs.back()};
        m.timestamp = utc_timestamp();
        write_text_file(path + ".manifest.json", dump_json(manifest_to_json(m)));
        std::cout << "wrote " << path << "\n";
    }

   private:
    RunManifest m_;
};

void ensure_dir(const std::string &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir + ": " + ec.message());
    }
}

std::string join(const std::string &dir, const char *name) { return (fs::path(dir) / name).string(); }

void cmd_design(size_t n, const std::string &out) {
    Run run("design");
    run.parameters()["n"] = n;
    const auto d = build_sparse_design(n);
    ensure_dir(out);
    run.write(join(out, "unitary.json"), dump_json(unitary_to_json(d.unitary)));
    run.write(join(out, "design.json"), dump_json(design_to_json(d)));
    std::cout << "unitarity defect " << unitarity_defect(d.unitary.matrix()).max_deviation << "\n";
}

void cmd_simulate(const std::string &unitary, const std::string &gram, const std::string &input,
                  const std::string &config, bool all, unsigned threads, const std::string &out) {
    if (all == !config.empty()) {
        throw UsageError("simulate needs exactly one of --config or --all");
    }
    Run run("simulate");
    const auto u = unitary_from_json(run.read_json(unitary));
    const auto g = gram_from_json(run.read_json(gram));
    const InputConfig v(parse_port_list(input));
    run.parameters()["input"] = v.ports();
    EngineOptions opts;
    opts.threads = threads;
    CoincidenceReport report;
    if (all) {
        run.parameters()["all"] = true;
        report = all_rates(u, g, v, opts);
    } else {
        const OutputConfig eta(parse_port_list(config));
        run.parameters()["config"] = eta.key();
        v.check_modes(u.modes());
        const auto r = coincidence_rate_detailed(u, g, v, eta, opts);
        report.photons = v.photons();
        report.modes = u.modes();
        report.rates[eta] = RateEntry{r.rate, r.im_residual, std::nullopt};
        report.discard_mass = std::max(0.0, 1.0 - r.rate);
    }
    run.write(out, rates_to_csv(report));
}

void cmd_sample(const std::string &rates, uint64_t shots, uint64_t seed, const std::string &out) {
    Run run("sample");
    run.seed(seed);
    run.parameters()["shots"] = shots;
    const auto report = rates_from_csv(run.read(rates));
    run.write(out, dump_json(counts_to_json(sample_counts(report, shots, seed))));
}

void cmd_classify(const std::string &design, bool audit, const std::string &out) {
    Run run("classify");
    const auto df = design_from_json(run.read_json(design));
    const auto c = classify(df.layout);
    run.write(out, dump_json(classification_to_json(c)));
    std::cout << "xi " << c.xi.size() << " zeta " << c.zeta.size() << " chi";
    size_t total = c.xi.size() + c.zeta.size() + c.chi_rest.size();
    for (const auto &chi : c.chi) {
        std::cout << " " << chi.size();
        total += chi.size();
    }
    std::cout << " rest " << c.chi_rest.size() << "\n";
    if (audit) {
        const size_t expected = collision_free_configs(c.modes, c.n).size();
        std::cout << "partition " << total << " of " << expected << (total == expected ? " ok" : " MISMATCH") << "\n";
        if (total != expected) {
            throw NumericalError("classification does not partition the collision-free configurations");
        }
    }
}

void cmd_estimate(const std::string &counts, const std::string &rates, const std::string &design,
                  const std::string &classification, const std::string &out) {
    if (counts.empty() == rates.empty()) {
        throw UsageError("estimate needs exactly one of --counts or --rates");
    }
    Run run("estimate");
    const auto df = design_from_json(run.read_json(design));
    const auto cls = classification.empty() ? classify(df.layout)
                                            : classification_from_json(run.read_json(classification), df.layout);
    const CoincidenceReport report =
        counts.empty() ? rates_from_csv(run.read(rates)) : rates_from_counts(counts_from_json(run.read_json(counts)));
    const auto e = estimate(report, cls);
    run.write(out, dump_json(estimate_to_json(e)));
    std::cout << "amplitude " << e.amplitude << " phase_abs " << e.phase_abs << "\n";
}

void cmd_graphs(const std::string &unitary, const std::string &input, const std::string &format,
                const std::string &out) {
    Run run("graphs");
    const auto u = unitary_from_json(run.read_json(unitary));
    const InputConfig v(parse_port_list(input));
    v.check_modes(u.modes());
    run.parameters()["input"] = v.ports();
    run.parameters()["format"] = format;
    const auto gc = connectivity_graph(u);
    const auto minor = minor_graph(gc);
    const auto ed = enhanced_graph(minor, v);
    ensure_dir(out);
    if (format == "dot") {
        run.write(join(out, "connectivity.dot"), to_dot(gc));
        run.write(join(out, "minor.dot"), to_dot(minor, "minor"));
        run.write(join(out, "enhanced.dot"), to_dot(ed, "enhanced"));
    } else {
        run.write(join(out, "connectivity.json"), dump_json(graph_to_json(gc)));
        run.write(join(out, "minor.json"), dump_json(graph_to_json(minor)));
        run.write(join(out, "enhanced.json"), dump_json(graph_to_json(ed)));
    }
    const auto verdict = pure_cycle_check(ed);
    std::cout << "connectivity " << gc.edges.size() << " edges; enhanced graph "
              << (verdict.is_pure_cycle ? "is" : "is not") << " a pure " << v.photons() << "-cycle\n";
}

void cmd_verify_appendix(const std::string &range, size_t samples, uint64_t seed, unsigned threads,
                         const std::string &out) {
    const auto [lo, hi] = parse_range(range);
    Run run("verify-appendix");
    run.seed(seed);
    run.parameters()["n_range"] = range;
    run.parameters()["samples"] = samples;
    Json sweeps = Json::array();
    size_t violations = 0;
    for (size_t n = lo; n <= hi; ++n) {
        const auto r = conjecture_sweep(n, samples, seed, threads);
        violations += r.violations.size();
        std::printf("n=%zu bound=%.15g fourier=%.15g max_random=%.15g violations=%zu\n", n, r.bound, r.fourier_value,
                    r.max_random_value, r.violations.size());
        sweeps.push_back(sweep_to_json(r));
    }
    Json j = Json::object();
    j["sweeps"] = std::move(sweeps);
    j["total_violations"] = violations;
    run.write(out, dump_json(j));
}

void cmd_compare_resources(size_t n, const std::string &format, const std::string &out) {
    const auto r = resource_comparison(n);
    std::ostringstream ss;
    if (format == "csv") {
        ss << "quantity,sparse,rival\n"
           << "depth," << r.depth << "," << r.rival_depth_proxy << "\n"
           << "beamsplitters," << r.beamsplitters << "," << r.rival_beamsplitters_proxy << "\n"
           << "modes," << r.modes << "," << r.rival_modes << "\n"
           << "internal_params," << r.extra_internal_params << "," << r.rival_internal_params_min << "\n";
    } else {
        ss << "n = " << n << "\n"
           << "  depth          " << r.depth << "  vs " << r.rival_depth_order << " (proxy " << r.rival_depth_proxy
           << ")\n"
           << "  beamsplitters  " << r.beamsplitters << "  vs " << r.rival_beamsplitter_order << " (proxy "
           << r.rival_beamsplitters_proxy << ")\n"
           << "  modes          " << r.modes << "  vs " << r.rival_modes << "\n"
           << "  internal dim   " << r.extra_internal_params << " extra  vs d >= " << r.rival_internal_params_min
           << "\n";
    }
    if (out.empty()) {
        std::cout << ss.str();
        return;
    }
    Run run("compare-resources");
    run.parameters()["n"] = n;
    run.parameters()["format"] = format;
    run.write(out, ss.str());
}

int fail(ExitCode code, const char *kind, const std::string &msg) {
    std::string flat = msg;
    for (char &c : flat) {
        if (c == '\n' || c == '"') {
            c = c == '\n' ? ' ' : '\'';
        }
    }
    std::cerr << "error code=" << static_cast<int>(code) << " kind=" << kind << " msg=\"" << flat << "\"\n";
    return static_cast<int>(code);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multiphoton collective phase toolkit"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    size_t n = 0;
    std::string out, unitary, gram, input, config, rates, counts, design, classification, range;
    std::string graph_format, table_format;
    bool all = false, audit = false;
    uint64_t shots = 0, seed = 0;
    size_t samples = 1000;
    unsigned threads = 0;

    auto *design_cmd = app.add_subcommand("design", "Build the sparse n-cycle interferometer");
    design_cmd->add_option("--n", n, "Photon number")->required()->check(CLI::Range(3, 64));
    design_cmd->add_option("--out", out, "Output directory")->required();

    auto *sim = app.add_subcommand("simulate", "Coincidence rates from unitary, Gram matrix and input");
    sim->add_option("--unitary", unitary)->required();
    sim->add_option("--gram", gram)->required();
    sim->add_option("--input", input, "Input ports, e.g. 1,3,5,7")->required();
    auto *config_opt = sim->add_option("--config", config, "Single output configuration");
    sim->add_flag("--all", all, "All collision-free configurations")->excludes(config_opt);
    sim->add_option("--threads", threads);
    sim->add_option("--out", out, "Rates CSV")->required();

    auto *sample = app.add_subcommand("sample", "Draw detection counts from a rates file");
    sample->add_option("--rates", rates)->required();
    sample->add_option("--shots", shots)->required();
    sample->add_option("--seed", seed)->required();
    sample->add_option("--out", out, "Counts JSON")->required();

    auto *cls = app.add_subcommand("classify", "Partition output configurations for a design");
    cls->add_option("--design", design)->required();
    cls->add_flag("--audit", audit, "Check that the sets partition all configurations");
    cls->add_option("--out", out, "Classification JSON")->required();

    auto *est = app.add_subcommand("estimate", "Recover pairwise overlaps and the collective phase");
    auto *counts_opt = est->add_option("--counts", counts);
    est->add_option("--rates", rates)->excludes(counts_opt);
    est->add_option("--design", design)->required();
    est->add_option("--classification", classification);
    est->add_option("--out", out, "Estimate JSON")->required();

    auto *graphs = app.add_subcommand("graphs", "Connectivity, minor and enhanced graphs");
    graphs->add_option("--unitary", unitary)->required();
    graphs->add_option("--input", input)->required();
    graphs->add_option("--format", graph_format, "dot or json")->default_val("dot")->check(CLI::IsMember({"dot", "json"}));
    graphs->add_option("--out", out, "Output directory")->required();

    auto *verify = app.add_subcommand("verify-appendix", "Permanent bound sweep over Haar unitaries");
    verify->add_option("--n-range", range, "N or A..B")->required();
    verify->add_option("--samples", samples)->default_val(1000);
    verify->add_option("--seed", seed)->required();
    verify->add_option("--threads", threads);
    verify->add_option("--out", out, "Sweep JSON")->required();

    auto *cmp = app.add_subcommand("compare-resources", "Resource table against the logarithmic-depth scheme");
    cmp->add_option("--n", n)->required()->check(CLI::Range(3, 1000000));
    cmp->add_option("--format", table_format, "text or csv")->default_val("text")->check(CLI::IsMember({"text", "csv"}));
    cmp->add_option("--out", out, "Optional output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail(ExitCode::Usage, "usage", e.what());
    }

    try {
        if (design_cmd->parsed()) {
            cmd_design(n, out);
        } else if (sim->parsed()) {
            cmd_simulate(unitary, gram, input, config, all, threads, out);
        } else if (sample->parsed()) {
            cmd_sample(rates, shots, seed, out);
        } else if (cls->parsed()) {
            cmd_classify(design, audit, out);
        } else if (est->parsed()) {
            cmd_estimate(counts, rates, design, classification, out);
        } else if (graphs->parsed()) {
            cmd_graphs(unitary, input, graph_format, out);
        } else if (verify->parsed()) {
            cmd_verify_appendix(range, samples, seed, threads, out);
        } else if (cmp->parsed()) {
            cmd_compare_resources(n, table_format, out);
        }
    } catch (const UsageError &e) {
        return fail(ExitCode::Usage, "usage", e.what());
    } catch (const ValidationError &e) {
        return fail(ExitCode::Validation, "validation", e.what());
    } catch (const IoError &e) {
        return fail(ExitCode::Validation, "io", e.what());
    } catch (const NumericalError &e) {
        return fail(ExitCode::Numerical, "numerical", e.what());
    }
    return 0;
}

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

#include "mcphase/io.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcphase/errors.h"

namespace mcp {

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << text;
    if (!out.flush()) {
        throw IoError("write failed for " + path);
    }
}

Json read_json_file(const std::string &path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
}

std::string dump_json(const Json &j) { return j.dump(2) + "\n"; }

namespace {

// Wraps nlohmann type errors so malformed files map to validation failures.
template <typename F>
auto guarded(const char *what, F &&f) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

Json config_to_json(const OutputConfig &eta) { return eta.ports(); }

Json configs_to_json(const std::vector<OutputConfig> &v) {
    Json arr = Json::array();
    for (const auto &eta : v) {
        arr.push_back(config_to_json(eta));
    }
    return arr;
}

std::vector<OutputConfig> configs_from_json(const Json &arr) {
    std::vector<OutputConfig> out;
    for (const auto &c : arr) {
        out.emplace_back(c.get<std::vector<int>>());
    }
    return out;
}

std::string pair_key(int a, int b) { return std::to_string(a) + "-" + std::to_string(b); }

Json permutation_json(const Permutation &p) { return p.images(); }

}  // namespace

Json matrix_to_json(const ComplexMatrix &m, const char *size_key) {
    Json j;
    j[size_key] = m.rows();
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            entries.push_back({m(i, k).real(), m(i, k).imag()});
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

ComplexMatrix matrix_from_json(const Json &j, const char *size_key) {
    return guarded("matrix file", [&] {
        const long n = j.at(size_key).get<long>();
        if (n < 1) {
            throw ValidationError(std::string("matrix size \"") + size_key + "\" must be >= 1");
        }
        const auto &entries = j.at("entries");
        if (!entries.is_array() || entries.size() != static_cast<size_t>(n * n)) {
            throw ValidationError("matrix entries must be a row-major array of " + std::to_string(n * n) +
                                  " [re, im] pairs");
        }
        ComplexMatrix m(n, n);
        for (long i = 0; i < n; ++i) {
            for (long k = 0; k < n; ++k) {
                const auto &e = entries[static_cast<size_t>(i * n + k)];
                if (!e.is_array() || e.size() != 2) {
                    throw ValidationError("matrix entry is not an [re, im] pair");
                }
                m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
            }
        }
        return m;
    });
}

Json unitary_to_json(const ScatteringMatrix &u) { return matrix_to_json(u.matrix(), "m"); }

ScatteringMatrix unitary_from_json(const Json &j) { return validate_unitary(matrix_from_json(j, "m")); }

Json gram_to_json(const GramMatrix &g) { return matrix_to_json(g.matrix(), "n"); }

GramMatrix gram_from_json(const Json &j) { return GramMatrix(matrix_from_json(j, "n")); }

std::string rates_to_csv(const CoincidenceReport &report) {
    std::string out = "config,rate,im_residual\n";
    char buf[128];
    for (const auto &[eta, entry] : report.rates) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", entry.rate, entry.im_residual);
        out += "\"" + eta.key() + "\"" + buf;
    }
    return out;
}

CoincidenceReport rates_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "config,rate,im_residual") {
        throw ValidationError("rates CSV must start with the header config,rate,im_residual");
    }
    CoincidenceReport r;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto bad = [&] { return ValidationError("rates CSV line " + std::to_string(lineno) + " is malformed"); };
        if (line.front() != '"') {
            throw bad();
        }
        const size_t close = line.find('"', 1);
        if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',') {
            throw bad();
        }
        const OutputConfig eta = OutputConfig::parse(line.substr(1, close - 1));
        const std::string rest = line.substr(close + 2);
        const size_t comma = rest.find(',');
        if (comma == std::string::npos) {
            throw bad();
        }
        RateEntry e;
        try {
            size_t used = 0;
            e.rate = std::stod(rest.substr(0, comma), &used);
            e.im_residual = std::stod(rest.substr(comma + 1));
        } catch (const std::exception &) {
            throw bad();
        }
        if (!(e.rate >= 0.0 && e.rate <= 1.0)) {
            throw ValidationError("rates CSV line " + std::to_string(lineno) + ": rate outside [0, 1]");
        }
        if (r.photons == 0) {
            r.photons = eta.size();
        } else if (eta.size() != r.photons) {
            throw ValidationError("rates CSV mixes photon numbers");
        }
        r.modes = std::max(r.modes, static_cast<size_t>(eta.ports().back()));
        if (!r.rates.emplace(eta, e).second) {
            throw ValidationError("rates CSV repeats configuration " + eta.key());
        }
    }
    if (r.rates.empty()) {
        throw ValidationError("rates CSV has no rows");
    }
    r.discard_mass = std::max(0.0, 1.0 - r.total_rate());
    return r;
}

Json counts_to_json(const CountReport &c) {
    Json j;
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    Json counts = Json::object();
    for (const auto &[eta, k] : c.counts) {
        counts[eta.key()] = k;
    }
    j["counts"] = std::move(counts);
    j["discard"] = c.discard;
    return j;
}

CountReport counts_from_json(const Json &j) {
    return guarded("counts file", [&] {
        CountReport c;
        c.shots = j.at("shots").get<uint64_t>();
        c.seed = j.at("seed").get<uint64_t>();
        c.discard = j.at("discard").get<uint64_t>();
        for (const auto &[key, value] : j.at("counts").items()) {
            c.counts.emplace(OutputConfig::parse(key), value.get<uint64_t>());
        }
        return c;
    });
}

Json design_to_json(const SparseDesign &d) {
    Json j;
    j["n"] = d.n;
    j["modes"] = d.unitary.modes();
    j["v"] = d.input.ports();
    j["sigma"] = permutation_json(d.sigma);
    j["rho"] = permutation_json(d.rho);
    j["cycle"] = d.cycle;
    Json o = Json::object();
    for (const auto &e : d.layout.edges) {
        o[pair_key(e.a, e.b)] = e.ports;
    }
    j["o_sets"] = std::move(o);
    Json bs = Json::array();
    for (const auto &b : d.beamsplitters) {
        bs.push_back({{"layer", b.layer}, {"index", b.index}, {"ports", {b.port_a, b.port_b}}});
    }
    j["beamsplitters"] = std::move(bs);
    return j;
}

DesignFile design_from_json(const Json &j) {
    return guarded("design file", [&] {
        CycleLayout layout;
        layout.n = j.at("n").get<size_t>();
        layout.modes = j.at("modes").get<size_t>();
        layout.cycle = j.at("cycle").get<std::vector<int>>();
        const auto &o = j.at("o_sets");
        const size_t n = layout.cycle.size();
        for (size_t i = 0; i < n; ++i) {
            CycleEdge e;
            e.a = layout.cycle[i];
            e.b = layout.cycle[(i + 1) % n];
            const std::string key = pair_key(e.a, e.b);
            if (!o.contains(key)) {
                throw ValidationError("design file lacks o_sets entry " + key);
            }
            e.ports = o.at(key).get<std::vector<int>>();
            layout.edges.push_back(std::move(e));
        }
        layout.validate();
        InputConfig v(j.at("v").get<std::vector<int>>());
        if (v.photons() != layout.n) {
            throw ValidationError("design file: v has the wrong length");
        }
        v.check_modes(layout.modes);
        return DesignFile{std::move(v), std::move(layout)};
    });
}

Json classification_to_json(const ConfigClassification &c) {
    Json j;
    j["n"] = c.n;
    j["modes"] = c.modes;
    j["xi"] = configs_to_json(c.xi);
    j["zeta"] = configs_to_json(c.zeta);
    Json chi = Json::object();
    for (size_t i = 0; i < c.chi.size(); ++i) {
        const auto &e = c.layout.edges[i];
        chi[pair_key(e.a, e.b)] = configs_to_json(c.chi[i]);
    }
    j["chi"] = std::move(chi);
    j["chi_rest"] = configs_to_json(c.chi_rest);
    return j;
}

ConfigClassification classification_from_json(const Json &j, const CycleLayout &layout) {
    return guarded("classification file", [&] {
        ConfigClassification c;
        c.n = j.at("n").get<size_t>();
        c.modes = j.at("modes").get<size_t>();
        c.layout = layout;
        c.xi = configs_from_json(j.at("xi"));
        c.zeta = configs_from_json(j.at("zeta"));
        for (const auto &e : layout.edges) {
            const std::string key = pair_key(e.a, e.b);
            if (!j.at("chi").contains(key)) {
                throw ValidationError("classification lacks chi subset " + key);
            }
            c.chi.push_back(configs_from_json(j.at("chi").at(key)));
        }
        c.chi_rest = configs_from_json(j.at("chi_rest"));

        const ConfigClassification expect = classify(layout);
        if (c.n != expect.n || c.modes != expect.modes || c.xi != expect.xi || c.zeta != expect.zeta ||
            c.chi != expect.chi || c.chi_rest != expect.chi_rest) {
            throw ValidationError("classification file does not match the design's output sets");
        }
        return c;
    });
}

Json estimate_to_json(const EstimateReport &e) {
    Json j;
    Json pw = Json::object();
    for (const auto &p : e.pairwise) {
        pw[pair_key(p.a, p.b)] = p.value;
    }
    j["pairwise"] = std::move(pw);
    j["amplitude"] = e.amplitude;
    j["phase_abs"] = e.phase_abs;
    j["phase_candidates"] = {e.phase_candidates[0], e.phase_candidates[1]};
    j["diff"] = e.diff;

    Json d;
    d["n"] = e.n;
    d["mode"] = e.sampled ? "counts" : "rates";
    if (e.shots) {
        d["shots"] = *e.shots;
    }
    Json raw = Json::object();
    Json sums = Json::object();
    Json se = Json::object();
    for (const auto &p : e.pairwise) {
        raw[pair_key(p.a, p.b)] = p.raw;
        sums[pair_key(p.a, p.b)] = p.chi_sum;
        if (p.stderr_raw) {
            se[pair_key(p.a, p.b)] = *p.stderr_raw;
        }
    }
    d["pairwise_raw"] = std::move(raw);
    d["chi_sums"] = std::move(sums);
    d["cos_arg_raw"] = e.cos_arg_raw;
    d["clamp_excess"] = e.clamp_excess;
    if (e.sampled) {
        d["stderr_pairwise"] = std::move(se);
        if (e.stderr_amplitude) {
            d["stderr_amplitude"] = *e.stderr_amplitude;
        }
        if (e.stderr_diff) {
            d["stderr_diff"] = *e.stderr_diff;
        }
        if (e.stderr_phase) {
            d["stderr_phase"] = *e.stderr_phase;
        }
    }
    j["diagnostics"] = std::move(d);
    return j;
}

Json sweep_to_json(const ConjectureSweepResult &r) {
    Json j;
    j["n"] = r.n;
    j["bound"] = r.bound;
    j["fourier_value"] = r.fourier_value;
    j["max_random_value"] = r.max_random_value;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    Json v = Json::array();
    for (const auto &x : r.violations) {
        v.push_back({{"sample", x.sample},
                     {"sample_seed", x.sample_seed},
                     {"value", x.value},
                     {"unitary", matrix_to_json(x.unitary, "m")}});
    }
    j["violations"] = std::move(v);
    return j;
}

Json graph_to_json(const ConnectivityGraph &g) {
    Json j;
    j["m"] = g.m;
    Json edges = Json::array();
    for (const auto &[s, d] : g.edges) {
        edges.push_back({s, d});
    }
    j["edges"] = std::move(edges);
    return j;
}

Json graph_to_json(const EDGraph &g) {
    Json j;
    j["n"] = g.n;
    Json edges = Json::array();
    for (const auto &[a, b] : g.edges) {
        edges.push_back({a, b});
    }
    j["edges"] = std::move(edges);
    return j;
}

std::string fnv1a64_hex(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json manifest_to_json(const RunManifest &m) {
    Json j;
    j["command"] = m.command;
    Json in = Json::object();
    for (const auto &[path, digest] : m.inputs) {
        in[path] = "fnv1a64:" + digest;
    }
    j["inputs"] = std::move(in);
    Json out = Json::object();
    for (const auto &[path, digest] : m.outputs) {
        out[path] = "fnv1a64:" + digest;
    }
    j["outputs"] = std::move(out);
    j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
    j["parameters"] = m.parameters;
    j["version"] = m.version;
    j["timestamp"] = m.timestamp;
    return j;
}

std::string utc_timestamp() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace mcp

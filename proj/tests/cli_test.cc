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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "mcphase/io.h"
#include "test_util.h"

namespace mcp {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::path(::testing::TempDir()) / (std::string("mcphase_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    Result run(const std::string &args) const {
        const std::string err_path = path("stderr.txt");
        const std::string cmd = std::string(MCPHASE_CLI_PATH) + " " + args + " 2>" + err_path;
        Result r;
        FILE *pipe = popen(cmd.c_str(), "r");
        if (pipe == nullptr) {
            return r;
        }
        char buf[4096];
        size_t got = 0;
        while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
            r.out.append(buf, got);
        }
        const int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = read_text_file(err_path);
        return r;
    }

    void write_gram(const std::string &name, const GramMatrix &g) const {
        write_text_file(path(name), dump_json(gram_to_json(g)));
    }

    void design(size_t n) const { ASSERT_EQ(run("design --n " + std::to_string(n) + " --out " + path("d")).code, 0); }

    fs::path dir_;
};

TEST_F(Cli, DesignWritesPrintedMatrixAndManifest) {
    design(4);
    const auto u = unitary_from_json(read_json_file(path("d/unitary.json")));
    EXPECT_EQ(u.matrix(), sparse_unitary_matrix(4));
    EXPECT_EQ(u(0, 1), Complex(-0.5));
    EXPECT_EQ(u(7, 7), Complex(0.5));
    const Json m = read_json_file(path("d/unitary.json.manifest.json"));
    EXPECT_EQ(m["command"], "design");
    EXPECT_EQ(m["parameters"]["n"], 4);
    EXPECT_EQ(m["outputs"][path("d/unitary.json")], "fnv1a64:" + fnv1a64_hex(read_text_file(path("d/unitary.json"))));
    EXPECT_TRUE(fs::exists(path("d/design.json.manifest.json")));

    EXPECT_EQ(run("design --n 3 --out " + path("d3")).code, 0);
    EXPECT_EQ(unitary_from_json(read_json_file(path("d3/unitary.json"))).modes(), 6u);
}

TEST_F(Cli, UsageErrors) {
    const auto r = run("design --n 2 --out " + path("x"));
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error code=2 kind=usage", 0), 0u) << r.err;
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("--version").code, 0);
}

TEST_F(Cli, SimulateTritterAndSparse) {
    write_text_file(path("tritter.json"), dump_json(unitary_to_json(fourier_matrix(3))));
    write_gram("id3.json", GramMatrix::identity(3));
    ASSERT_EQ(run("simulate --unitary " + path("tritter.json") + " --gram " + path("id3.json") +
                  " --input 1,2,3 --config 1,2,3 --out " + path("t.csv"))
                  .code,
              0);
    const auto t = rates_from_csv(read_text_file(path("t.csv")));
    EXPECT_NEAR(t.rate(OutputConfig({1, 2, 3})), 2.0 / 9, 1e-15);

    design(4);
    write_gram("ones4.json", GramMatrix::all_ones(4));
    ASSERT_EQ(run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("ones4.json") +
                  " --input 1,3,5,7 --all --out " + path("r.csv"))
                  .code,
              0);
    const auto r = rates_from_csv(read_text_file(path("r.csv")));
    EXPECT_EQ(r.rates.size(), 70u);
    EXPECT_NEAR(r.rate(OutputConfig({1, 3, 5, 7})), 1.0 / 64, 1e-15);
    EXPECT_NE(read_text_file(path("r.csv")).find("\"1,3,5,7\",0.015625,"), std::string::npos);
}

TEST_F(Cli, SimulateRejectsBadInputs) {
    design(4);
    write_text_file(path("bad.json"), R"({"n": 2, "entries": [[1,0],[1.5,0],[1.5,0],[1,0]]})");
    auto r = run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("bad.json") +
                 " --input 1,3 --all --out " + path("r.csv"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("not PSD"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(path("r.csv")));

    write_gram("ones4.json", GramMatrix::all_ones(4));
    r = run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("ones4.json") +
            " --input 1,3,5,9 --all --out " + path("r.csv"));
    EXPECT_EQ(r.code, 3);
    r = run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("ones4.json") +
            " --input 1,3,5,7 --out " + path("r.csv"));
    EXPECT_EQ(r.code, 2);
    r = run("simulate --unitary " + path("missing.json") + " --gram " + path("ones4.json") +
            " --input 1,3,5,7 --all --out " + path("r.csv"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("kind=io"), std::string::npos);
}

TEST_F(Cli, SampleIsDeterministic) {
    design(4);
    std::mt19937_64 rng(1);
    write_gram("g.json", testing::random_gram(4, rng));
    ASSERT_EQ(run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("g.json") +
                  " --input 1,3,5,7 --all --out " + path("r.csv"))
                  .code,
              0);
    const std::string base = "sample --rates " + path("r.csv") + " --shots 100000 --seed 17 --out ";
    ASSERT_EQ(run(base + path("a.json")).code, 0);
    ASSERT_EQ(run(base + path("b.json")).code, 0);
    EXPECT_EQ(read_text_file(path("a.json")), read_text_file(path("b.json")));
    const auto c = counts_from_json(read_json_file(path("a.json")));
    uint64_t total = c.discard;
    for (const auto &[eta, k] : c.counts) {
        total += k;
    }
    EXPECT_EQ(total, 100000u);
    EXPECT_EQ(read_json_file(path("a.json.manifest.json"))["seed"], 17);

    EXPECT_EQ(run("sample --rates " + path("r.csv") + " --shots 0 --seed 1 --out " + path("z.json")).code, 3);
    EXPECT_EQ(run("sample --rates " + path("r.csv") + " --shots 10 --out " + path("z.json")).code, 2);
}

TEST_F(Cli, ClassifyCounts) {
    design(4);
    const auto r = run("classify --design " + path("d/design.json") + " --audit --out " + path("c.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("partition 70 of 70 ok"), std::string::npos) << r.out;
    const Json c = read_json_file(path("c.json"));
    EXPECT_EQ(c["xi"].size(), 16u);
    EXPECT_EQ(c["chi"]["1-2"].size(), 12u);

    ASSERT_EQ(run("design --n 5 --out " + path("d5")).code, 0);
    ASSERT_EQ(run("classify --design " + path("d5/design.json") + " --audit --out " + path("c5.json")).code, 0);
    EXPECT_EQ(read_json_file(path("c5.json"))["xi"].size(), 32u);
}

TEST_F(Cli, EstimateRecoversPhase) {
    design(4);
    ASSERT_EQ(run("classify --design " + path("d/design.json") + " --out " + path("c.json")).code, 0);
    const auto cycle = build_sparse_design(4).cycle;
    // tan(theta)^2 = tan(pi/12) puts the four-photon phase at pi/3.
    const double theta = std::atan(std::sqrt(std::tan(std::numbers::pi / 12)));
    write_gram("g.json", testing::latitude_gram(cycle, theta));
    ASSERT_EQ(run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("g.json") +
                  " --input 1,3,5,7 --all --out " + path("r.csv"))
                  .code,
              0);
    const std::string tail = " --design " + path("d/design.json") + " --classification " + path("c.json") + " --out ";
    auto r = run("estimate --rates " + path("r.csv") + tail + path("e.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    const Json e = read_json_file(path("e.json"));
    EXPECT_NEAR(e["phase_abs"].get<double>(), std::numbers::pi / 3, 1e-8);

    write_gram("ones.json", GramMatrix::all_ones(4));
    ASSERT_EQ(run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("ones.json") +
                  " --input 1,3,5,7 --all --out " + path("r1.csv"))
                  .code,
              0);
    ASSERT_EQ(run("estimate --rates " + path("r1.csv") + tail + path("e1.json")).code, 0);
    const Json e1 = read_json_file(path("e1.json"));
    EXPECT_NEAR(e1["phase_abs"].get<double>(), 0.0, 1e-8);
    EXPECT_NEAR(e1["amplitude"].get<double>(), 1.0, 1e-10);

    write_gram("id.json", GramMatrix::identity(4));
    ASSERT_EQ(run("simulate --unitary " + path("d/unitary.json") + " --gram " + path("id.json") +
                  " --input 1,3,5,7 --all --out " + path("r0.csv"))
                  .code,
              0);
    ASSERT_EQ(run("sample --rates " + path("r0.csv") + " --shots 100000 --seed 3 --out " + path("k0.json")).code, 0);
    r = run("estimate --counts " + path("k0.json") + tail + path("e0.json"));
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("phase unrecoverable"), std::string::npos) << r.err;

    EXPECT_EQ(run("estimate" + tail + path("e2.json")).code, 2);
}

TEST_F(Cli, GraphsDot) {
    design(4);
    const auto r = run("graphs --unitary " + path("d/unitary.json") + " --input 1,3,5,7 --format dot --out " +
                       path("g"));
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string conn = read_text_file(path("g/connectivity.dot"));
    size_t vertices = 0, edges = 0;
    for (size_t pos = 0; (pos = conn.find("[label=", pos)) != std::string::npos; ++pos) {
        ++vertices;
    }
    for (size_t pos = 0; (pos = conn.find(" -- ", pos)) != std::string::npos; ++pos) {
        ++edges;
    }
    EXPECT_EQ(vertices, 16u);
    EXPECT_EQ(edges, 32u);
    const std::string ed = read_text_file(path("g/enhanced.dot"));
    for (const char *e : {"v1 -- v2", "v1 -- v3", "v2 -- v4", "v3 -- v4"}) {
        EXPECT_NE(ed.find(e), std::string::npos) << e;
    }
    EXPECT_NE(r.out.find("is a pure 4-cycle"), std::string::npos);

    write_text_file(path("id.json"), dump_json(unitary_to_json(validate_unitary(ComplexMatrix::Identity(3, 3)))));
    ASSERT_EQ(run("graphs --unitary " + path("id.json") + " --input 1,2,3 --out " + path("gi")).code, 0);
    const std::string idc = read_text_file(path("gi/connectivity.dot"));
    size_t id_edges = 0;
    for (size_t pos = 0; (pos = idc.find(" -- ", pos)) != std::string::npos; ++pos) {
        ++id_edges;
    }
    EXPECT_EQ(id_edges, 3u);
}

TEST_F(Cli, VerifyAppendix) {
    auto r = run("verify-appendix --n-range 3..4 --samples 100 --seed 5 --out " + path("v.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    const Json v = read_json_file(path("v.json"));
    ASSERT_EQ(v["sweeps"].size(), 2u);
    EXPECT_NEAR(v["sweeps"][0]["fourier_value"].get<double>(), 2.0 / 9, 1e-15);
    for (const auto &s : v["sweeps"]) {
        EXPECT_NEAR(s["fourier_value"].get<double>(), s["bound"].get<double>(), 1e-12);
        EXPECT_TRUE(s["violations"].empty());
    }
    r = run("verify-appendix --n-range 8 --samples 10 --seed 5 --out " + path("v8.json"));
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(run("verify-appendix --n-range 4..3 --seed 5 --out " + path("v9.json")).code, 2);
}

TEST_F(Cli, CompareResources) {
    auto r = run("compare-resources --n 4 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("depth,2,"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("internal_params,0,1"), std::string::npos) << r.out;
    r = run("compare-resources --n 3 --format csv");
    EXPECT_NE(r.out.find("internal_params,0,0"), std::string::npos) << r.out;
    r = run("compare-resources --n 100");
    EXPECT_NE(r.out.find("beamsplitters  200  vs O(n log n)"), std::string::npos) << r.out;
    ASSERT_EQ(run("compare-resources --n 8 --format csv --out " + path("t.csv")).code, 0);
    EXPECT_TRUE(fs::exists(path("t.csv.manifest.json")));
}

TEST_F(Cli, PipelineIsReproducible) {
    std::mt19937_64 rng(9);
    const auto g = testing::random_gram(4, rng);
    std::string prev;
    for (const char *threads : {"1", "3"}) {
        const std::string sub = path(std::string("run") + threads);
        fs::create_directories(sub);
        write_text_file(sub + "/g.json", dump_json(gram_to_json(g)));
        ASSERT_EQ(run("design --n 4 --out " + sub).code, 0);
        ASSERT_EQ(run("simulate --unitary " + sub + "/unitary.json --gram " + sub + "/g.json --input 1,3,5,7 --all "
                      "--threads " + threads + " --out " + sub + "/r.csv")
                      .code,
                  0);
        ASSERT_EQ(run("sample --rates " + sub + "/r.csv --shots 1000000 --seed 42 --out " + sub + "/k.json").code, 0);
        ASSERT_EQ(run("estimate --counts " + sub + "/k.json --design " + sub + "/design.json --out " + sub + "/e.json")
                      .code,
                  0);
        const std::string all = read_text_file(sub + "/r.csv") + read_text_file(sub + "/k.json") +
                                read_text_file(sub + "/e.json");
        if (!prev.empty()) {
            EXPECT_EQ(all, prev);
        }
        prev = all;
    }
}

}  // namespace
}  // namespace mcp

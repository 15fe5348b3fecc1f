#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

using lmorse::oracle::slurp;
using lmorse::oracle::spit;
using lmorse::oracle::TempDir;

struct Result {
    int code;
    std::string err;
};

Result run(const std::string& args, const TempDir& dir) {
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string(LMORSE_CLI) + " " + args + " > /dev/null 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

TEST(Cli, SynthIsByteIdentical) {
    TempDir dir("cli");
    const std::string base = "synth --system bistable_1d --trajectories 100 --steps 50 --seed 0 --out ";
    ASSERT_EQ(run(base + (dir / "a.json").string(), dir).code, 0);
    ASSERT_EQ(run(base + (dir / "b.json").string(), dir).code, 0);
    EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
    EXPECT_FALSE(slurp(dir / "a.json").empty());
}

TEST(Cli, UnknownFlagFails) {
    TempDir dir("cli");
    EXPECT_NE(run("synth --system bistable_1d --trajectories 1 --steps 1 --seed 0 --colour red", dir).code, 0);
    EXPECT_NE(run("analyze --config " + (dir / "missing.json").string(), dir).code, 0);
}

TEST(Cli, StaleGraphStopsMorse) {
    TempDir dir("cli");
    ASSERT_EQ(run("synth --system bistable_1d --trajectories 50 --steps 20 --seed 0 --out " +
                      (dir / "train.json").string(),
                  dir)
                  .code,
              0);
    const auto write_config = [&](int r) {
        spit(dir / "cfg.json", R"({"system": "bistable_1d", "subdivisions": [16], "rollout_steps": )" +
                                   std::to_string(r) + R"(, "train": "train.json", "output_dir": "out"})");
    };
    write_config(1);
    ASSERT_EQ(run("build-graph --config " + (dir / "cfg.json").string(), dir).code, 0);
    ASSERT_EQ(run("morse --config " + (dir / "cfg.json").string(), dir).code, 0);
    write_config(2);
    const auto r = run("morse --config " + (dir / "cfg.json").string(), dir);
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("stale"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("digest"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("rerun build-graph"), std::string::npos) << r.err;
}

TEST(Cli, StatsReadsGraph) {
    TempDir dir("cli");
    ASSERT_EQ(run("synth --system bistable_1d --trajectories 50 --steps 20 --seed 0 --out " +
                      (dir / "train.json").string(),
                  dir)
                  .code,
              0);
    spit(dir / "cfg.json", R"({"system": "bistable_1d", "subdivisions": [16], "train": "train.json", "output_dir": "out"})");
    ASSERT_EQ(run("build-graph --config " + (dir / "cfg.json").string(), dir).code, 0);
    EXPECT_EQ(run("stats --config " + (dir / "cfg.json").string(), dir).code, 0);
    EXPECT_EQ(run("stats --graph " + (dir / "out" / "graph.json").string(), dir).code, 0);
}

}  // namespace

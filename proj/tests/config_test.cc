#include "parityq/config.hpp"

#include <gtest/gtest.h>

using namespace parityq;

namespace {

nlohmann::json minimal_config() {
    return nlohmann::json{{"lattice", "testbed-9q"},
                          {"tunneling", "25 MHz"},
                          {"couplings", {{"all", "0.4 GHz"}}},
                          {"control_bias", "2 GHz"},
                          {"tau", "10 ns"},
                          {"dt", "0.1 ns"},
                          {"gate", "four-active"}};
}

}  // namespace

TEST(Quantities, FrequencyUnitsNormalizeToGhz) {
    EXPECT_DOUBLE_EQ(parse_frequency_ghz("0.4 GHz"), 0.4);
    EXPECT_DOUBLE_EQ(parse_frequency_ghz("25 MHz"), 0.025);
    EXPECT_DOUBLE_EQ(parse_frequency_ghz("500 kHz"), 5e-7);
    EXPECT_THROW(parse_frequency_ghz("0.4"), ConfigError);
    EXPECT_THROW(parse_frequency_ghz("0.4 Hz2"), ConfigError);
    EXPECT_THROW(parse_frequency_ghz("0.4 GHz extra"), ConfigError);
    EXPECT_THROW(parse_frequency_ghz("10 ns"), ConfigError);
}

TEST(Quantities, TimeUnitsNormalizeToNs) {
    EXPECT_DOUBLE_EQ(parse_time_ns("10 ns"), 10.0);
    EXPECT_DOUBLE_EQ(parse_time_ns("0.1 ns"), 0.1);
    EXPECT_DOUBLE_EQ(parse_time_ns("2 us"), 2000.0);
    EXPECT_THROW(parse_time_ns("10"), ConfigError);
    EXPECT_THROW(parse_time_ns("10 GHz"), ConfigError);
}

TEST(RunConfig, ParsesMinimalTestbedConfig) {
    RunConfig cfg = RunConfig::from_json(minimal_config());
    EXPECT_EQ(cfg.lattice, "testbed-9q");
    EXPECT_DOUBLE_EQ(cfg.delta, 0.025);
    for (double x : cfg.xi) EXPECT_DOUBLE_EQ(x, 0.4);
    EXPECT_DOUBLE_EQ(cfg.control_bias, 2.0);
    EXPECT_DOUBLE_EQ(cfg.tau, 10.0);
    EXPECT_DOUBLE_EQ(cfg.dt, 0.1);
    EXPECT_EQ(cfg.gate, TestbedGate::FourActive);
    EXPECT_EQ(cfg.engine, Engine::Exact);
}

TEST(RunConfig, UnknownKeysRejectedEverywhere) {
    auto j = minimal_config();
    j["surprise"] = 1;
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);

    j = minimal_config();
    j["couplings"]["diagonal"] = "0.1 GHz";
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);

    j = minimal_config();
    j["sweep"] = {{"parameter", "tunneling"}, {"values", {"23 MHz"}}, {"oops", 1}};
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);
}

TEST(RunConfig, BadEnumValuesRejected) {
    auto j = minimal_config();
    j["gate"] = "five-active";
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);
    j = minimal_config();
    j["engine"] = "magic";
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);
    j = minimal_config();
    j["lattice"] = "torus";
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);
}

TEST(RunConfig, DirectionalCouplingsOverrideAll) {
    auto j = minimal_config();
    j["couplings"] = {{"up", "0.5 GHz"}, {"down", "0.8 GHz"}, {"left", "0.4 GHz"},
                      {"right", "0.2 GHz"}};
    RunConfig cfg = RunConfig::from_json(j);
    EXPECT_DOUBLE_EQ(cfg.xi[0], 0.5);
    EXPECT_DOUBLE_EQ(cfg.xi[1], 0.8);
    EXPECT_DOUBLE_EQ(cfg.xi[2], 0.4);
    EXPECT_DOUBLE_EQ(cfg.xi[3], 0.2);
}

TEST(RunConfig, SweepValuesAndRange) {
    auto j = minimal_config();
    j["sweep"] = {{"parameter", "tunneling"}, {"values", {"23 MHz", "25 MHz", "27 MHz"}}};
    RunConfig cfg = RunConfig::from_json(j);
    ASSERT_TRUE(cfg.sweep_request.has_value());
    EXPECT_EQ(cfg.sweep_request->values, (std::vector<double>{0.023, 0.025, 0.027}));
    EXPECT_TRUE(cfg.sweep_request->rescale_pulses);

    j["sweep"] = {{"parameter", "coupling_all"},
                  {"range", {{"from", "0.3 GHz"}, {"to", "0.5 GHz"}, {"points", 5}}},
                  {"rescale_pulses", false}};
    cfg = RunConfig::from_json(j);
    ASSERT_EQ(cfg.sweep_request->values.size(), 5u);
    EXPECT_DOUBLE_EQ(cfg.sweep_request->values.front(), 0.3);
    EXPECT_DOUBLE_EQ(cfg.sweep_request->values.back(), 0.5);
    EXPECT_FALSE(cfg.sweep_request->rescale_pulses);

    j["sweep"] = {{"parameter", "dt"}, {"values", {"0.05 ns"}}};
    cfg = RunConfig::from_json(j);
    EXPECT_DOUBLE_EQ(cfg.sweep_request->values[0], 0.05);

    j["sweep"] = {{"parameter", "tunneling"}};
    EXPECT_THROW(RunConfig::from_json(j), ConfigError);
}

TEST(RunConfig, PulseStepOverrideParsed) {
    auto j = minimal_config();
    j["pulse_steps"] = {{{"bias", "0.8 GHz"}, {"duration", "10 ns"}},
                        {{"bias", "-0.8 GHz"}, {"duration", "10 ns"}}};
    RunConfig cfg = RunConfig::from_json(j);
    ASSERT_TRUE(cfg.pulse_steps.has_value());
    ASSERT_EQ(cfg.pulse_steps->size(), 2u);
    EXPECT_DOUBLE_EQ((*cfg.pulse_steps)[1].bias, -0.8);
}

TEST(RunConfig, GeneralGateNeedsFlipConfigs) {
    auto j = minimal_config();
    j["gate"] = "general";
    RunConfig cfg = RunConfig::from_json(j);
    EXPECT_THROW(cfg.to_experiment(), ConfigError);
    j["flip_configs"] = {"1000", "0001"};
    cfg = RunConfig::from_json(j);
    TestbedExperiment ex = cfg.to_experiment();
    ASSERT_TRUE(ex.custom_spec.has_value());
    EXPECT_EQ(ex.custom_spec->assignment[0b1000], GateAction::FlipX);
    EXPECT_EQ(ex.custom_spec->assignment[0b0001], GateAction::FlipX);
    EXPECT_EQ(ex.custom_spec->assignment[0b0000], GateAction::Identity);

    j["flip_configs"] = {"10a0"};
    cfg = RunConfig::from_json(j);
    EXPECT_THROW(cfg.to_experiment(), ConfigError);
}

TEST(RunConfig, SurfaceLatticeAndErrors) {
    nlohmann::json j{{"lattice", "surface"},
                     {"rows", 5},
                     {"cols", 5},
                     {"couplings", {{"measure_z", "0.4 GHz"}, {"measure_x", "0.6 GHz"}}},
                     {"errors", {{{"pauli", "X"}, {"row", 2}, {"col", 2}}}}};
    RunConfig cfg = RunConfig::from_json(j);
    LatticeSpec spec = cfg.build_lattice();
    EXPECT_EQ(spec.rows, 5);
    ASSERT_EQ(cfg.errors.size(), 1u);
    EXPECT_EQ(cfg.errors[0].pauli, Pauli::X);

    j["rows"] = 4;
    EXPECT_THROW(RunConfig::from_json(j).build_lattice(), ConfigError);
    EXPECT_THROW(RunConfig::from_json(j).to_experiment(), ConfigError);
}

TEST(RunConfig, ResolvedRoundTripsThroughParser) {
    RunConfig cfg = RunConfig::from_json(minimal_config());
    RunConfig back = RunConfig::from_json(cfg.resolved());
    EXPECT_DOUBLE_EQ(back.delta, cfg.delta);
    EXPECT_DOUBLE_EQ(back.tau, cfg.tau);
    EXPECT_DOUBLE_EQ(back.dt, cfg.dt);
    EXPECT_EQ(back.gate, cfg.gate);
    EXPECT_EQ(back.xi, cfg.xi);
    // Byte-identical resolved dumps for identical configs.
    EXPECT_EQ(cfg.resolved().dump(), back.resolved().dump());
}

TEST(RunConfig, MissingFileIsConfigError) {
    EXPECT_THROW(RunConfig::from_file("/nonexistent/config.json"), ConfigError);
}

TEST(OutputHelpers, FileHeaderCarriesVersionAndConfig) {
    RunConfig cfg = RunConfig::from_json(minimal_config());
    std::string header = file_header(cfg);
    EXPECT_EQ(header.rfind("# parityq 1.0.0\n# config: {", 0), 0u);
}

TEST(OutputHelpers, ScheduleJsonUsesUnits) {
    PulseSchedule s;
    s.steps = {{0.8, 10.0}, {-0.8, 10.0}};
    nlohmann::json j = schedule_to_json(s);
    EXPECT_EQ(j["steps"][0]["bias"], "0.8 GHz");
    EXPECT_EQ(j["steps"][1]["bias"], "-0.8 GHz");
    EXPECT_EQ(j["steps"][0]["duration"], "10 ns");
    EXPECT_EQ(j["tracked_phase"], "-i");
    EXPECT_EQ(j["total_duration"], "20 ns");
}

TEST(OutputHelpers, LatticeJsonListsRolesAndEdges) {
    nlohmann::json j = lattice_to_json(build_surface_layout(3, 3, 0.4, 0.6));
    EXPECT_EQ(j["rows"], 3);
    EXPECT_EQ(j["roles"][0], "DXD");
    EXPECT_EQ(j["roles"][1], "ZDZ");
    EXPECT_EQ(j["edges"].size(), 12u);
}

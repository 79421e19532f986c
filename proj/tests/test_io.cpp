#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "combforge/config.hpp"
#include "combforge/csv.hpp"
#include "combforge/errors.hpp"
#include "combforge/scenarios.hpp"

using namespace combforge;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("combforge_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("load_config: empty file yields the built-in defaults") {
    const auto dir = temp_dir("defaults");
    const auto loaded = load_config(write_file(dir, "empty.json", "\n"), {});
    const RunConfig& cfg = loaded.config;
    CHECK(cfg.squid.shunt_resistance_ohm == 20.0);
    CHECK(cfg.squid.critical_current_sum_A == 100e-6);
    CHECK(cfg.drive.frequency_Hz == 1e9);
    CHECK(cfg.drive.amplitude == 0.9);
    CHECK(cfg.drive.bias == 1e-3);
    CHECK(cfg.n_squids == 50);
    CHECK(cfg.load_resistance_ohm == 50.0);
    CHECK(cfg.samples_per_period == 65536);
    CHECK(cfg.disorder.n_bins == 201);
    CHECK(cfg.disorder.n_realizations == 10000);
}

TEST_CASE("load_config: file values, overrides, and the provenance echo") {
    const auto dir = temp_dir("overrides");
    const auto path =
        write_file(dir, "cfg.json", R"({"sigma_area": 0.02, "n_squids": 10})");
    const auto loaded = load_config(path, {"sigma_area=0.05", "k_max=40"});
    CHECK(loaded.config.disorder.sigma_area == 0.05);
    CHECK(loaded.config.n_squids == 10);
    CHECK(loaded.config.k_max == 40);

    write_resolved_config(loaded, dir);
    const auto echo = nlohmann::json::parse(slurp(dir / "resolved_config.json"));
    CHECK(echo["resolved"]["sigma_area"] == 0.05);
    CHECK(echo["file_values"]["sigma_area"] == 0.02); // both source values recorded
    CHECK(echo["overrides"][0] == "sigma_area=0.05");
    CHECK(echo["resolved_sha256"] == config_sha256(loaded.config));
}

TEST_CASE("load_config: errors name the problem") {
    const auto dir = temp_dir("badconfig");
    CHECK_THROWS_AS(load_config(dir / "missing.json", {}), IoError);
    CHECK_THROWS_AS(load_config(write_file(dir, "broken.json", "{nope"), {}), ParseError);
    CHECK_THROWS_AS(load_config(write_file(dir, "list.json", "[1,2]"), {}), ParseError);
    CHECK_THROWS_AS(load_config(write_file(dir, "unknown.json", R"({"resistance": 1})"), {}),
                    ValidationError);

    const auto ok = write_file(dir, "ok.json", "{}");
    CHECK_THROWS_WITH_AS(load_config(ok, {"asymmetry_r=1.5"}).config.validate(),
                         doctest::Contains("|r| < 1"), ValidationError);
    CHECK_THROWS_AS(load_config(ok, {"badkey=3"}), ValidationError);
    CHECK_THROWS_AS(load_config(ok, {"n_squids"}), ValidationError);
    CHECK_THROWS_AS(load_config(ok, {"dtau=1e-4"}), ValidationError); // does not divide 2 pi
    const auto fine = load_config(ok, {"dtau=0.00019174759848570515"}); // 2 pi / 32768
    CHECK(fine.config.samples_per_period == 32768);
}

TEST_CASE("config hash: canonical, stable, sensitive to values") {
    RunConfig a;
    RunConfig b;
    CHECK(config_sha256(a) == config_sha256(b));
    b.disorder.seed = 7;
    CHECK(config_sha256(a) != config_sha256(b));
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("timeseries csv: header, row count, exact round trip") {
    TimeSeries s;
    s.t0_s = 1e-9;
    s.dt_s = 2e-12;
    s.kind = SeriesKind::voltage;
    s.values = {1.0 / 3.0, -4.6e-5, 0.0};
    const auto dir = temp_dir("csv");
    emit_timeseries_csv(s, dir / "wave.csv");
    const std::string text = slurp(dir / "wave.csv");

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t_s,V_V");
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        const double t = std::strtod(line.substr(0, comma).c_str(), nullptr);
        const double v = std::strtod(line.substr(comma + 1).c_str(), nullptr);
        CHECK(t == s.time_at(static_cast<std::size_t>(rows)));
        CHECK(v == s.values[static_cast<std::size_t>(rows)]);
        ++rows;
    }
    CHECK(rows == 3);
    CHECK(text.find('\r') == std::string::npos); // LF only
}

TEST_CASE("spectrum csv: increasing harmonics with parity labels") {
    Spectrum spectrum;
    spectrum.drive_frequency_Hz = 1e9;
    spectrum.record_duration_s = 2e-9;
    spectrum.load_resistance_ohm = 50.0;
    for (int k = 1; k <= 4; ++k)
        spectrum.harmonics.push_back(
            {k, k * 1e9, 1e-12 * k, k % 2 == 0 ? Parity::even : Parity::odd});
    const auto dir = temp_dir("speccsv");
    emit_spectrum_csv(spectrum, dir / "spec.csv");
    const std::string text = slurp(dir / "spec.csv");
    CHECK(text.rfind("k,f_Hz,P_W,parity\n", 0) == 0);
    CHECK(text.find("1,1000000000,9.9999999999999998e-13,odd\n") != std::string::npos);
    CHECK(text.find("2,2000000000,") != std::string::npos);
    CHECK(text.find(",even\n") != std::string::npos);
}

TEST_CASE("scenario registry round trip; unknown names rejected") {
    const auto names = scenario_names();
    CHECK(names.size() == 8);
    for (const auto& name : names) {
        const auto id = parse_scenario(name);
        REQUIRE(id.has_value());
        CHECK(scenario_name(*id) == name);
    }
    CHECK(!parse_scenario("fig9_wishful").has_value());
}

TEST_CASE("run_simulate: ideal-array pipeline writes the requested artifacts") {
    const auto dir = temp_dir("simulate");
    LoadedConfig loaded;
    loaded.config.samples_per_period = 4096;
    loaded.config.k_max = 12;
    loaded.config.output_dir = (dir / "out").string();
    loaded.config.validate();
    const Manifest manifest = run_simulate(loaded);

    CHECK(fs::exists(dir / "out" / "waveform.csv"));
    CHECK(fs::exists(dir / "out" / "spectrum.csv"));
    CHECK(fs::exists(dir / "out" / "pulses.csv"));
    CHECK(fs::exists(dir / "out" / "resolved_config.json"));
    CHECK(fs::exists(dir / "out" / "manifest.json"));

    // manifest hashes describe the bytes on disk
    for (const auto& file : manifest.content["files"]) {
        const std::string bytes = slurp(dir / "out" / file["path"].get<std::string>());
        CHECK(sha256_hex(bytes) == file["sha256"].get<std::string>());
        CHECK(bytes.size() == file["bytes"].get<std::size_t>());
    }
    CHECK(manifest.content["config_sha256"] == config_sha256(loaded.config));
}

TEST_CASE("run_simulate: outputs list is honored") {
    const auto dir = temp_dir("outputs");
    LoadedConfig loaded;
    loaded.config.samples_per_period = 4096;
    loaded.config.k_max = 8;
    loaded.config.outputs = {"spectrum"};
    loaded.config.output_dir = (dir / "out").string();
    const Manifest manifest = run_simulate(loaded);
    CHECK(!fs::exists(dir / "out" / "waveform.csv"));
    CHECK(fs::exists(dir / "out" / "spectrum.csv"));
    CHECK(manifest.content["files"].size() == 2); // spectrum.csv + resolved_config.json
}

TEST_SUITE_END();

// drowsyguard: scenario runner for the drowsy-driver detection pipeline.
//
//   drowsyguard run --config <path> [--csv <path>] [--seed <u64>]
//   drowsyguard validate --config <path>
//   drowsyguard goldens [--dir <path>]
//
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "drowsy/config.hpp"
#include "drowsy/errors.hpp"
#include "drowsy/harness.hpp"

namespace fs = std::filesystem;

namespace {

void print_summary(const drowsy::RunReport& rep) {
    std::printf("episodes=%d\n", rep.episode_count());
    std::printf("false_alarms=%d\n", rep.false_alarm_count);
    std::printf("missed=%d\n", rep.missed_count);
    std::printf("latency_ms=%.4f\n", rep.mean_latency_ms());
}

int do_run(const std::string& config_path, const std::string& csv_override,
           std::optional<std::uint64_t> seed) {
    drowsy::RunConfig cfg = drowsy::load_config(config_path);
    cfg.seed_override = seed;
    if (!csv_override.empty())
        cfg.csv_path = csv_override;

    const drowsy::RunReport rep = drowsy::run(cfg);
    if (!cfg.csv_path.empty())
        drowsy::emit_csv(rep, cfg.csv_path);
    print_summary(rep);
    return 0;
}

int do_validate(const std::string& config_path) {
    const drowsy::RunConfig cfg = drowsy::load_config(config_path); // validates
    drowsy::Scenario sc = drowsy::parse_scenario(drowsy::read_text_file(cfg.scenario_path));
    std::printf("ok scenario=%s samples=%zu\n", cfg.scenario_path.c_str(),
                drowsy::sample_count(sc));
    return 0;
}

// Regenerates the checked-in golden fixtures from the current encoders:
// the GSM byte fixture and the expected CSV of the 600 ms closure run.
int do_goldens(const std::string& dir) {
    const fs::path root = dir;

    const auto gsm = drowsy::encode_gsm_at({"+15551234567", "DROWSY DRIVER ALERT"});
    drowsy::write_file(root / "gsm_alert.bin",
                       std::string_view(reinterpret_cast<const char*>(gsm.data()), gsm.size()));
    std::printf("wrote %s\n", (root / "gsm_alert.bin").string().c_str());

    drowsy::RunConfig cfg = drowsy::load_config(root / "configs" / "closure600.cfg");
    drowsy::emit_csv(drowsy::run(cfg), root / "expected_closure600.csv");
    std::printf("wrote %s\n", (root / "expected_closure600.csv").string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"drowsy-driver detection and alert simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string csv_path;
    std::uint64_t seed = 0;
    std::string goldens_dir = "fixtures";

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario through the pipeline");
    run_cmd->add_option("--config", config_path, "run config file")->required();
    run_cmd->add_option("--csv", csv_path, "write the per-tick trace here");
    CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the scenario seed");

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a config and its scenario");
    validate_cmd->add_option("--config", config_path, "run config file")->required();

    CLI::App* goldens_cmd = app.add_subcommand("goldens", "regenerate golden fixtures");
    goldens_cmd->add_option("--dir", goldens_dir, "fixture directory");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed())
            return do_run(config_path, csv_path,
                          seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
        if (validate_cmd->parsed())
            return do_validate(config_path);
        return do_goldens(goldens_dir);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints message or requested help
        return code == 0 ? 0 : 1;
    } catch (const drowsy::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

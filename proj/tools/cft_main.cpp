// cft: batch front-end for continued-fraction power experiments.
//
// cft run <config.json | preset:NAME> [--upto N] [--measure d=.. k=.. H=..]
//         [--seed S] [--format json|csv] [--out PATH]

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cft/config.hpp"

namespace {

constexpr int kExitValidation = 3;
constexpr int kExitIo = 5;

// "d=2" style tokens from --measure.
cft::ordered_json parse_measure_tokens(const std::vector<std::string>& tokens) {
    cft::ordered_json j;
    j["check"] = "measure";
    for (const auto& t : tokens) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw cft::config_error("--measure expects key=value tokens, got: " + t);
        const std::string key = t.substr(0, eq), value = t.substr(eq + 1);
        if (key == "d" || key == "sampled" || key == "adversarial" || key == "budget")
            j[key] = std::stol(value);
        else if (key == "k" || key == "H")
            j[key] = value;
        else if (key == "variants") {
            cft::ordered_json vs = cft::ordered_json::array();
            std::size_t pos = 0;
            while (pos != std::string::npos) {
                const auto semi = value.find(';', pos);
                vs.push_back(value.substr(pos, semi == std::string::npos ? semi : semi - pos));
                pos = semi == std::string::npos ? semi : semi + 1;
            }
            j[key] = vs;
        } else
            throw cft::config_error("--measure: unknown key '" + key + "'");
    }
    if (!j.contains("d") || !j.contains("H")) throw cft::config_error("--measure requires d= and H=");
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continued-fraction transcendence toolkit"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run checks from a config file or preset");
    std::string target;
    long upto = 6;
    std::vector<std::string> measure_tokens;
    std::optional<unsigned long long> seed;
    std::string format, out_path;
    run_cmd->add_option("target", target, "config path or preset:NAME")->required();
    run_cmd->add_option("--upto", upto, "highest index n to check (default 6)");
    run_cmd->add_option("--measure", measure_tokens, "add a measure check: d=.. H=.. [k=..] [sampled=..] [adversarial=..] [budget=..]")
        ->expected(-1);
    run_cmd->add_option("--seed", seed, "seed for sampled checks");
    run_cmd->add_option("--format", format, "json|csv (overrides config)");
    run_cmd->add_option("--out", out_path, "output path (default stdout; overrides config)");

    CLI11_PARSE(app, argc, argv);

    try {
        cft::ExperimentConfig cfg = [&] {
            const std::string preset_prefix = "preset:";
            if (target.rfind(preset_prefix, 0) == 0)
                return cft::ExperimentConfig::from_preset(target.substr(preset_prefix.size()), upto);
            return cft::ExperimentConfig::from_file(target);
        }();
        if (seed) cfg.seed = seed;
        if (!format.empty()) {
            if (format != "json" && format != "csv") throw cft::config_error("format must be json or csv");
            cfg.output.format = format;
        }
        if (!out_path.empty()) cfg.output.path = out_path;
        if (!measure_tokens.empty()) {
            cft::ordered_json mj = parse_measure_tokens(measure_tokens);
            if (!cfg.seed && !mj.contains("seed"))
                throw cft::config_error("a seed is required when sampled checks are requested");
            cfg.checks.push_back(cft::CheckSpec{"measure", mj});
            cft::ordered_json fj;
            fj["check"] = "find_n1";
            fj["d"] = mj.at("d");
            fj["H"] = mj.at("H");
            if (mj.contains("k")) fj["k"] = mj.at("k");
            cfg.checks.push_back(cft::CheckSpec{"find_n1", fj});
            cfg.echo["checks"].push_back(mj);
            cfg.echo["checks"].push_back(fj);
        }
        if (cfg.seed) cfg.echo["seed"] = *cfg.seed;

        cft::RunResult result = cft::run(cfg);
        const std::string body = cft::render_output(cfg, result.report);
        if (cfg.output.path.empty() || cfg.output.path == "-") {
            std::cout << body;
        } else {
            std::ofstream out(cfg.output.path);
            if (!out) {
                std::cerr << "cannot write " << cfg.output.path << "\n";
                return kExitIo;
            }
            out << body;
        }
        return result.exit_code;
    } catch (const cft::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const cft::budget_error& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return static_cast<int>(cft::RunStatus::Resource);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shellmodes/cli_io.hpp"

using namespace shellmodes;

int main(int argc, char** argv) {
    CLI::App app{"Lowest vibration modes of thin axisymmetric shells"};
    app.require_subcommand(1);

    std::string config_path;
    double h = 0.0;
    std::string out_dir;

    auto* classify_cmd = app.add_subcommand("classify", "Print the shell class, z0, min H0 and membrane limit");
    classify_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    auto* predict_cmd = app.add_subcommand("predict", "Print the asymptotic prediction record");
    predict_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    auto* disp_cmd = app.add_subcommand("dispersion", "Dispersion curve k -> lambda for one thickness, CSV on stdout");
    disp_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    disp_cmd->set_help_flag("--help", "Print this help message and exit");
    disp_cmd->add_option("--h", h, "Thickness h = 2 eps")->required();
    auto* sweep_cmd = app.add_subcommand("sweep", "First modes over the configured thickness list");
    sweep_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
    app.add_subcommand("constants", "Print the beam and Airy constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ExitOk : ExitConfig;
    }

    try {
        if (app.got_subcommand("constants")) {
            cmd_constants(std::cout);
            return ExitOk;
        }
        const ExperimentConfig cfg = load_config(config_path);
        if (app.got_subcommand(classify_cmd)) cmd_classify(cfg, std::cout);
        else if (app.got_subcommand(predict_cmd)) cmd_predict(cfg, std::cout);
        else if (app.got_subcommand(disp_cmd)) cmd_dispersion(cfg, h, std::cout);
        else if (app.got_subcommand(sweep_cmd)) {
            const auto dir = out_dir.empty() ? cfg.output_dir : out_dir;
            for (const auto& row : cmd_sweep(cfg, dir))
                std::cout << "h=" << 2.0 * row.eps << " k*=" << row.mode.k << " lambda=" << row.mode.lambda << '\n';
        }
    } catch (const ShellError& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ExitNumerical;
    }
    return ExitOk;
}

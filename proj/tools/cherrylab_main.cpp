#include <CLI11.hpp>
#include <cstdio>

#include "cherry/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cherrylab: bifurcation diagrams of flat circle maps and Cherry flows"};

    std::string config_path, command, out_dir = ".";
    double theta_min = -1, theta_max = -1;
    long q = -1;
    int jobs = 1;
    unsigned long long seed = 1;

    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--command", command,
                   "scan | loops | cells | dim | survivor | flow-check | conjugacy");
    app.add_option("--Q", q, "max denominator");
    app.add_option("--theta-min", theta_min, "parameter range start");
    app.add_option("--theta-max", theta_max, "parameter range end");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "worker threads for independent searches");
    app.add_option("--seed", seed, "seed for sampled audits");

    CLI11_PARSE(app, argc, argv);

    try {
        cherry::RunConfig rc;
        rc.cfg = config_path.empty() ? cherry::Config{} : cherry::Config::parse_file(config_path);
        if (!command.empty()) rc.cfg.set("command", command);
        if (q >= 0) rc.cfg.set("Q", std::to_string(q));
        if (theta_min >= 0) rc.cfg.set("theta_min", std::to_string(theta_min));
        if (theta_max >= 0) rc.cfg.set("theta_max", std::to_string(theta_max));
        rc.command = rc.cfg.get_string("command", "");
        if (rc.command.empty()) throw cherry::ConfigInvalid("no command given");
        rc.out_dir = out_dir;
        rc.jobs = jobs;
        rc.seed = seed;
        cherry::run(rc);
        return 0;
    } catch (const cherry::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return (int)e.error_class();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

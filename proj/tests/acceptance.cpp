#include "loopcert/acceptance.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria 1-8"};
    loopcert::AcceptanceOptions opts;
    std::string out_dir;
    app.add_option("--profile", opts.profile, "small or full")->check(CLI::IsMember({"small", "full"}));
    app.add_option("--seed", opts.seed, "random seed");
    app.add_option("--threads", opts.threads, "worker threads (0 = hardware)");
    app.add_option("--out", out_dir, "directory for the summary and sub-reports");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        const auto results = loopcert::run_acceptance(opts, std::cout);
        std::size_t passed = 0;
        for (const auto& r : results) passed += r.passed();
        std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::ofstream(std::filesystem::path(out_dir) / "summary.json") << loopcert::acceptance_summary(opts, results).dump(2) << '\n';
        }
        return passed == results.size() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 3;
    }
}

#include "ricci/error.hpp"
#include "ricci/experiment.hpp"
#include "ricci/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Ric_k verification experiments"};
  app.footer(ricci::describe_outputs());

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path, "Experiment config (JSON, schema_version 1)")->required();
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for sampled directions and random data");
  app.add_option("--threads", threads, "Worker threads (default: RICCI_THREADS or hardware)")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  if (threads == 0) {
    if (const char* env = std::getenv("RICCI_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) ricci::set_thread_count(threads);

  try {
    const std::filesystem::path path(config_path);
    auto config = ricci::config_from_json(ricci::load_json(path), path.parent_path());
    if (*out_opt) config.out_dir = out_dir;
    if (*seed_opt) config.seed = seed;
    const auto outcome = ricci::run_experiment(config);
    std::cout << ricci::to_string(config.mode) << ": verdict " << (outcome.verdict ? "pass" : "fail") << " ("
              << config.out_dir.string() << ")\n";
    return outcome.verdict ? ricci::kExitPass : ricci::kExitVerdictFailure;
  } catch (const ricci::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ricci::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ricci::kExitInputError;
  }
}

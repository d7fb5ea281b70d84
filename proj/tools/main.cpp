// Command line for the multi-objective Hamming-ball hill climber: instance
// generation, the multi-start benchmark protocol, and attainment surfaces.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hamball/harness.hpp"
#include "hamball/landscape.hpp"

namespace {

int cmd_gen(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::int32_t q,
            std::uint64_t seed, const std::string& model, const std::string& out) {
  const hamball::VectorMkLandscape f =
      model == "adjacent"
          ? hamball::VectorMkLandscape::generate_adjacent_mnk(n, k, d, q, seed)
          : hamball::VectorMkLandscape::generate_random_mnk(n, k, d, q, seed);
  hamball::save_instance(f, std::filesystem::path(out));
  std::cout << "wrote " << out << " (n=" << n << " d=" << d << " K=" << k
            << " q=" << q << " model=" << model << ")\n";
  return 0;
}

int cmd_run(const hamball::RunConfig& config) {
  const hamball::ExperimentResult result = hamball::run_experiment(config);

  std::uint64_t moves = 0;
  double mean_sum = 0.0;
  for (const auto& s : result.stats) {
    moves += s.total_moves;
    mean_sum += s.mean_move_us();
  }
  std::cout << "runs=" << result.stats.size() << " total_moves=" << moves
            << " combined_front=" << result.combined.size() << "\n";
  std::cout << "problem_init_us="
            << std::chrono::duration_cast<std::chrono::microseconds>(
                   result.stats.front().problem_init)
                   .count()
            << " avg_mean_move_us=" << mean_sum / static_cast<double>(result.stats.size())
            << "\n";
  if (config.out_dir.empty()) {
    hamball::write_front(result.combined, std::cout);
  } else {
    std::cout << "results in " << config.out_dir.string() << "\n";
  }
  return 0;
}

int cmd_eas50(const std::vector<std::string>& front_files, const std::string& out) {
  std::vector<std::vector<hamball::ObjectiveVector>> fronts;
  fronts.reserve(front_files.size());
  for (const auto& path : front_files)
    fronts.push_back(hamball::read_front(std::filesystem::path(path)));
  const auto surface = hamball::eas50(fronts);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    if (!file) throw std::runtime_error("cannot open " + out + " for writing");
    os = &file;
  }
  for (const auto& p : surface) *os << p[0] << "\t" << p[1] << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gray-box multi-objective Hamming-ball hill climber for Mk landscapes"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an MNKq instance file");
  std::uint32_t g_n = 0, g_k = 1, g_d = 2;
  std::int32_t g_q = 100;
  std::uint64_t g_seed = 1;
  std::string g_model = "adjacent", g_out;
  gen->add_option("--n", g_n, "Number of variables")->required();
  gen->add_option("--k", g_k, "K of the MNK model (subfunctions span K+1 variables)");
  gen->add_option("--d", g_d, "Number of objectives");
  gen->add_option("--q", g_q, "Subfunction values are integers in [0, q)");
  gen->add_option("--seed", g_seed, "Generator seed");
  gen->add_option("--model", g_model, "Interaction model: adjacent | random")
      ->check(CLI::IsMember({"adjacent", "random"}));
  gen->add_option("--out", g_out, "Output instance file")->required();

  // run
  auto* run = app.add_subcommand("run", "Multi-start hill climbing under a time budget");
  hamball::RunConfig config;
  std::string r_out;
  run->add_option("--n", config.n, "Number of variables")->required();
  run->add_option("--k", config.k, "K of the MNK model");
  run->add_option("--d", config.d, "Number of objectives");
  run->add_option("--q", config.q, "Subfunction values are integers in [0, q)");
  run->add_option("--r", config.r, "Hamming-ball exploration radius");
  run->add_option("--seed", config.seed, "Seed for instance and runs");
  run->add_option("--time-limit", config.time_limit_s, "Wall-clock budget per run, seconds");
  run->add_option("--max-climbs", config.max_climbs,
                  "Stop a run after this many climbs (0 = unlimited); makes outputs "
                  "seed-deterministic");
  run->add_option("--runs", config.runs, "Independent multistart runs");
  run->add_option("--threads", config.threads, "Worker threads across runs");
  run->add_option("--model", config.model, "Interaction model: adjacent | random")
      ->check(CLI::IsMember({"adjacent", "random"}));
  run->add_option("--out", r_out, "Output directory (front/stats/metadata files)");

  // eas50
  auto* eas = app.add_subcommand("eas50",
                                 "50% empirical attainment surface of d=2 front files");
  std::vector<std::string> e_fronts;
  std::string e_out = "-";
  eas->add_option("fronts", e_fronts, "Front files (one per run)")
      ->required()
      ->check(CLI::ExistingFile);
  eas->add_option("--out", e_out, "Output file ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(g_n, g_k, g_d, g_q, g_seed, g_model, g_out);
    if (run->parsed()) {
      config.out_dir = r_out;
      return cmd_run(config);
    }
    if (eas->parsed()) return cmd_eas50(e_fronts, e_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

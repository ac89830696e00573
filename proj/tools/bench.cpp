// Times the OpenMP paths against their serial reference twins and checks
// that both produce identical results: ensemble build (one GA per model),
// vote classification, and batch Tri-B assignment.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "electre/core.hpp"
#include "electre/ensemble.hpp"
#include "electre/io.hpp"
#include "electre/tri_b.hpp"

namespace {

using namespace electre;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_params(const TriBParameters& a, const TriBParameters& b) {
  return a.weights == b.weights && a.q == b.q && a.p == b.p && a.v == b.v &&
         a.profiles == b.profiles && a.lambda == b.lambda;
}

bool same_ensemble(const ensemble::Ensemble& a, const ensemble::Ensemble& b) {
  if (a.models.size() != b.models.size()) return false;
  for (std::size_t i = 0; i < a.models.size(); ++i) {
    const auto& ma = a.models[i];
    const auto& mb = b.models[i];
    if (ma.alternative_indices != mb.alternative_indices ||
        ma.criterion_indices != mb.criterion_indices || ma.accuracy != mb.accuracy ||
        !same_params(ma.params, mb.params))
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP benchmark"};
  std::string dataset_path = "data/dataset1.csv";
  std::size_t n_models = 200;
  std::uint64_t seed = 1;
  app.add_option("--dataset", dataset_path, "CSV dataset (default data/dataset1.csv)");
  app.add_option("--models", n_models, "ensemble size (default 200)");
  app.add_option("--seed", seed, "master seed");
  CLI11_PARSE(app, argc, argv);

  try {
    io::RunConfig config;
    config.dataset_path = dataset_path;
    config.class_count = 4;
    const auto data = io::load_dataset(config);
    const auto spec = ElicitationSpec::all_free(data.matrix, config.class_count);

    ensemble::BuildConfig build;
    build.n_models = n_models;
    build.sample_fraction = 0.25;
    build.master_seed = seed;

    std::cout << "dataset: " << dataset_path << " (" << data.matrix.rows() << " x "
              << data.matrix.cols() << "), models: " << n_models << "\n\n";

    auto start = Clock::now();
    const auto serial = ensemble::build_ensemble_serial(data.matrix, spec, build,
                                                        Rule::pessimistic);
    const double t_build_serial = seconds_since(start);

    start = Clock::now();
    const auto parallel = ensemble::build_ensemble(data.matrix, spec, build,
                                                   Rule::pessimistic);
    const double t_build_parallel = seconds_since(start);

    start = Clock::now();
    const auto votes_serial = ensemble::vote_classify_serial(serial, data.matrix);
    const double t_vote_serial = seconds_since(start);

    start = Clock::now();
    const auto votes_parallel = ensemble::vote_classify(parallel, data.matrix);
    const double t_vote_parallel = seconds_since(start);

    const auto merged = ensemble::merge_parameters(parallel, spec);
    start = Clock::now();
    const auto assign_serial = trib::classify_serial(data.matrix, merged, Rule::pessimistic);
    const double t_trib_serial = seconds_since(start);
    start = Clock::now();
    const auto assign_parallel = trib::classify(data.matrix, merged, Rule::pessimistic);
    const double t_trib_parallel = seconds_since(start);

    auto report = [](const char* name, double serial_s, double parallel_s) {
      std::cout << name << ": serial " << serial_s << " s, parallel " << parallel_s
                << " s, speedup " << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "\n";
    };
    report("build_ensemble", t_build_serial, t_build_parallel);
    report("vote_classify ", t_vote_serial, t_vote_parallel);
    report("trib classify ", t_trib_serial, t_trib_parallel);

    const bool ok = same_ensemble(serial, parallel) &&
                    votes_serial.winners == votes_parallel.winners &&
                    votes_serial.counts == votes_parallel.counts &&
                    assign_serial.classes == assign_parallel.classes;
    std::cout << "\nserial == parallel: " << (ok ? "yes" : "NO") << "\n";
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// Command-line front end: elicit ensembles, classify new alternatives, run
// plain ELECTRE Tri-B or k-means, and export decision-boundary grids.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "electre/clustering.hpp"
#include "electre/core.hpp"
#include "electre/ensemble.hpp"
#include "electre/evolve.hpp"
#include "electre/io.hpp"
#include "electre/rng.hpp"
#include "electre/tri_b.hpp"

namespace {

using namespace electre;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// The reference labels an elicit run reports accuracy against: assignment
// examples when the dataset has them, otherwise one clustering of the full
// matrix on a stream just past the per-model ones.
ReferenceLabels reference_labels(const io::Dataset& data, const io::RunConfig& config) {
  if (data.labels) return *data.labels;
  Rng rng(Rng::derive(config.build.master_seed, config.build.n_models));
  return cluster::cluster_labels(data.matrix, config.class_count, rng);
}

struct ElicitArgs {
  std::string config_path;
  std::string report_path;
  std::string ensemble_path;
};

int run_elicit(const ElicitArgs& args, const io::RunConfig& config) {
  const auto data = io::load_dataset(config);
  const auto spec = io::make_spec(data.matrix, config);
  const auto reference = reference_labels(data, config);

  auto ens = ensemble::build_ensemble(data.matrix, spec, config.build, config.rule,
                                      data.labels ? &*data.labels : nullptr);
  if (config.trim) ens = ensemble::trim_models(ens, *config.trim);
  const auto merged = ensemble::merge_parameters(ens, spec);
  const auto votes = ensemble::vote_classify(ens, data.matrix);

  write_text(args.report_path, io::elicit_report(data, ens, merged, votes, reference));
  if (!args.ensemble_path.empty())
    io::save_ensemble(args.ensemble_path,
                      io::StoredEnsemble{ens, merged, data.prep, data.class_names});
  return 0;
}

int run_classify(const std::string& ensemble_path, const std::string& data_path,
                 const std::string& report_path) {
  const auto stored = io::load_ensemble(ensemble_path);
  ReferenceLabels labels;
  const auto matrix =
      io::load_new_alternatives(data_path, stored.prep, stored.class_names, &labels);
  const auto votes = ensemble::vote_classify(stored.ensemble, matrix);
  const auto merged_assignment =
      trib::classify(matrix, stored.merged, stored.ensemble.rule);
  write_text(report_path,
             io::classify_report(stored, matrix, votes, merged_assignment, &labels));
  return 0;
}

int run_cluster(const io::RunConfig& config, const std::string& out_path) {
  const auto data = io::load_dataset(config);
  Rng rng(config.build.master_seed);
  const auto clustering = cluster::kmeans(data.matrix, config.class_count, rng);
  const auto labels = cluster::order_clusters(clustering);

  std::ostringstream out;
  out << "Clusters (worst to best):\n";
  for (int rank = 0; rank < static_cast<int>(clustering.k); ++rank) {
    // Find the cluster holding this rank to print its centroid.
    std::size_t member_count = 0;
    std::vector<double> centroid;
    for (std::size_t c = 0; c < clustering.k; ++c) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < labels.labels.size(); ++i)
        if (clustering.membership[i] == static_cast<int>(c) && labels.labels[i] == rank)
          ++count;
      if (count > 0) {
        centroid = clustering.centroids[c];
        member_count = count;
        break;
      }
    }
    out << "  " << data.class_names[clustering.k - 1 - static_cast<std::size_t>(rank)]
        << ": (";
    for (std::size_t j = 0; j < centroid.size(); ++j)
      out << (j ? ", " : "") << io::format_double(centroid[j]);
    out << ")  " << member_count << " members\n";
  }
  out << "\nAssignments:\n";
  for (std::size_t i = 0; i < data.matrix.rows(); ++i)
    out << "  " << std::left << std::setw(10) << data.matrix.alternatives()[i] << std::right
        << data.class_names[clustering.k - 1 - static_cast<std::size_t>(labels.labels[i])]
        << "\n";
  write_text(out_path, out.str());
  return 0;
}

int run_trib(io::RunConfig config, const std::string& params_path,
             const std::string& out_path) {
  const auto params = io::load_parameters(params_path);
  const std::size_t k = params.profiles.size() + 1;
  if (config.class_count == 0) config.class_count = k;
  if (config.class_count != k)
    throw ValidationError("--classes disagrees with the parameter file (" +
                          std::to_string(k) + " classes)");
  const auto data = io::load_dataset(config);
  if (params.weights.size() != data.matrix.cols())
    throw ValidationError("parameter file covers " + std::to_string(params.weights.size()) +
                          " criteria, dataset has " + std::to_string(data.matrix.cols()));
  const auto& names = data.class_names;
  const auto assignment = trib::classify(data.matrix, params, config.rule);

  std::ostringstream out;
  out << "Assignments (" << rule_name(config.rule) << "):\n";
  for (std::size_t i = 0; i < data.matrix.rows(); ++i) {
    const int c = assignment.classes[i];
    out << "  " << std::left << std::setw(10) << data.matrix.alternatives()[i] << std::right;
    if (!names.empty())
      out << names[k - 1 - static_cast<std::size_t>(c)];
    else
      out << c;
    out << "\n";
  }
  if (data.labels) {
    std::size_t correct = 0, labeled = 0;
    for (std::size_t i = 0; i < data.matrix.rows(); ++i) {
      if (data.labels->labels[i] < 0) continue;
      ++labeled;
      if (assignment.classes[i] == data.labels->labels[i]) ++correct;
    }
    out << "\nAccuracy: " << correct << "/" << labeled << "\n";
  }
  write_text(out_path, out.str());
  return 0;
}

int run_boundary(const std::string& ensemble_path, const std::string& x_name,
                 const std::string& y_name, std::size_t resolution,
                 const std::vector<std::string>& fixes, const std::string& out_path) {
  const auto stored = io::load_ensemble(ensemble_path);
  std::map<std::string, double> fixed_values;
  for (const auto& fix : fixes) {
    const auto eq = fix.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--fix expects name=value, got '" + fix + "'");
    fixed_values[fix.substr(0, eq)] = std::stod(fix.substr(eq + 1));
  }
  std::ostringstream out;
  io::write_boundary_grid(out, stored, stored.merged, x_name, y_name, resolution,
                          fixed_values);
  write_text(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ELECTRE Tree: ensemble elicitation of ELECTRE Tri-B models"};
  app.require_subcommand(1);

  // Shared config-ish flags; each subcommand wires the ones it honors.
  ElicitArgs elicit_args;
  std::string dataset_path, label_column, normalization, rule_name_arg;
  std::string ensemble_path, data_path, report_path, params_path, x_name, y_name;
  std::vector<std::string> fixes;
  std::size_t classes = 0, models = 0, generations = 0, population = 0, resolution = 100;
  double fraction = 0.0, trim = -1.0;
  std::uint64_t seed = 0;

  auto* elicit = app.add_subcommand("elicit", "Build an ensemble and elicit parameters");
  elicit->add_option("--config", elicit_args.config_path, "run configuration (JSON)")
      ->required();
  elicit->add_option("--dataset", dataset_path, "override the config dataset path");
  elicit->add_option("--models", models, "override the model count");
  elicit->add_option("--sample-fraction", fraction, "override the bootstrap fraction");
  elicit->add_option("--generations", generations, "override GA generations");
  elicit->add_option("--population", population, "override GA population size");
  elicit->add_option("--seed", seed, "override the master seed");
  elicit->add_option("--trim", trim, "drop models below this accuracy");
  elicit->add_option("--report", elicit_args.report_path, "report path (default stdout)");
  elicit->add_option("--ensemble-out", elicit_args.ensemble_path, "write the ensemble here");

  auto* classify = app.add_subcommand("classify", "Classify new alternatives");
  classify->add_option("--ensemble", ensemble_path, "stored ensemble (JSON)")->required();
  classify->add_option("--data", data_path, "CSV of new alternatives")->required();
  classify->add_option("--report", report_path, "report path (default stdout)");

  auto* cluster_cmd = app.add_subcommand("cluster", "Ordered k-means labels only");
  cluster_cmd->add_option("--dataset", dataset_path, "CSV dataset")->required();
  cluster_cmd->add_option("--classes", classes, "cluster/class count")->required();
  cluster_cmd->add_option("--seed", seed, "rng seed");
  cluster_cmd->add_option("--normalization", normalization, "none|minmax");
  cluster_cmd->add_option("--out", report_path, "output path (default stdout)");

  auto* trib = app.add_subcommand("trib", "Plain ELECTRE Tri-B with given parameters");
  trib->add_option("--dataset", dataset_path, "CSV dataset")->required();
  trib->add_option("--params", params_path, "parameter file (JSON)")->required();
  trib->add_option("--rule", rule_name_arg, "pessimistic|optimistic");
  trib->add_option("--classes", classes, "class count (for labels / names)");
  trib->add_option("--label-column", label_column, "dataset column with reference labels");
  trib->add_option("--normalization", normalization, "none|minmax");
  trib->add_option("--out", report_path, "output path (default stdout)");

  auto* boundary = app.add_subcommand("boundary", "Export a decision-boundary grid CSV");
  boundary->add_option("--ensemble", ensemble_path, "stored ensemble (JSON)")->required();
  boundary->add_option("--x", x_name, "criterion on the x axis")->required();
  boundary->add_option("--y", y_name, "criterion on the y axis")->required();
  boundary->add_option("--resolution", resolution, "points per axis (default 100)");
  boundary->add_option("--fix", fixes, "value for another criterion, name=value");
  boundary->add_option("--out", report_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);

    if (elicit->parsed()) {
      auto config = io::load_config(elicit_args.config_path);
      if (elicit->count("--dataset")) config.dataset_path = dataset_path;
      if (elicit->count("--models")) config.build.n_models = models;
      if (elicit->count("--sample-fraction")) config.build.sample_fraction = fraction;
      if (elicit->count("--generations")) config.build.ga.generations = generations;
      if (elicit->count("--population")) config.build.ga.population_size = population;
      if (elicit->count("--seed")) config.build.master_seed = seed;
      if (elicit->count("--trim")) config.trim = trim;
      return run_elicit(elicit_args, config);
    }
    if (classify->parsed()) return run_classify(ensemble_path, data_path, report_path);
    if (cluster_cmd->parsed()) {
      io::RunConfig config;
      config.dataset_path = dataset_path;
      config.class_count = classes;
      config.build.master_seed = seed;
      if (cluster_cmd->count("--normalization"))
        config.normalization = io::normalization_from_name(normalization);
      return run_cluster(config, report_path);
    }
    if (trib->parsed()) {
      io::RunConfig config;
      config.dataset_path = dataset_path;
      config.label_column = label_column;
      if (trib->count("--rule")) config.rule = rule_from_name(rule_name_arg);
      if (trib->count("--normalization"))
        config.normalization = io::normalization_from_name(normalization);
      config.class_count = trib->count("--classes") ? classes : 0;  // 0 = from params
      return run_trib(config, params_path, report_path);
    }
    if (boundary->parsed())
      return run_boundary(ensemble_path, x_name, y_name, resolution, fixes, report_path);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

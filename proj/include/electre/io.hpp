#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "electre/core.hpp"
#include "electre/ensemble.hpp"
#include "electre/tri_b.hpp"

namespace electre::io {

enum class Direction { maximize, minimize };
enum class Normalization { none, minmax };

const char* direction_name(Direction d);
Direction direction_from_name(const std::string& name);
const char* normalization_name(Normalization n);
Normalization normalization_from_name(const std::string& name);

struct ColumnStats {
  double min = 0.0;
  double max = 0.0;
};

/// Everything needed to put a new CSV through the same transform as the
/// training data: criterion schema, per-criterion direction, normalization
/// mode, and the raw column ranges observed at training time.
struct Preprocessing {
  std::vector<std::string> criteria;
  std::vector<Direction> directions;
  Normalization normalization = Normalization::none;
  std::vector<ColumnStats> stats;
};

struct Dataset {
  DecisionMatrix matrix;  // post-transform, maximization-oriented
  std::optional<ReferenceLabels> labels;
  std::vector<std::string> class_names;  // best class first (A, B, ...)
  Preprocessing prep;
};

struct RunConfig {
  std::string dataset_path;
  std::map<std::string, std::string> directions;  // criterion -> "max" | "min"
  Normalization normalization = Normalization::none;
  std::size_t class_count = 2;
  Rule rule = Rule::pessimistic;
  std::string label_column;               // empty -> cluster-derived labels
  std::vector<std::string> class_names;   // optional, best first
  ensemble::BuildConfig build;
  std::optional<double> trim;
  nlohmann::json parameters;              // declarative fix/bounds block, may be null
};

/// Parses the JSON run configuration. Unknown keys are rejected.
RunConfig load_config(const std::string& path);

/// Reads the dataset named by the config and applies directions and
/// normalization. The CSV needs a header `id,<criterion>...`; a column named
/// by config.label_column supplies assignment examples (class names, best
/// first; empty cell = unlabeled).
Dataset load_dataset(const RunConfig& config);

/// Reads a CSV of new alternatives and applies a saved preprocessing. The
/// file may carry extra columns; all trained criteria must be present. When
/// `labels_out` is given and a "label" column exists, its class names are
/// resolved against `class_names` (best first) into `labels_out`.
DecisionMatrix load_new_alternatives(const std::string& path, const Preprocessing& prep,
                                     const std::vector<std::string>& class_names = {},
                                     ReferenceLabels* labels_out = nullptr);

/// Builds the search-space description for the config's dataset: all-free
/// bounds from the matrix columns, then the declarative `parameters` block
/// (fix / bounds per family) applied on top.
ElicitationSpec make_spec(const DecisionMatrix& matrix, const RunConfig& config);

/// Ensemble + everything needed to classify new data with it. The merged
/// model is materialized at save time so consumers do not need the original
/// elicitation spec.
struct StoredEnsemble {
  ensemble::Ensemble ensemble;
  TriBParameters merged;
  Preprocessing prep;
  std::vector<std::string> class_names;  // best first
};

/// Versioned JSON persistence; round-trips every double bit-exactly and
/// encodes a disabled veto as the string "inf".
void save_ensemble(const std::string& path, const StoredEnsemble& stored);
StoredEnsemble load_ensemble(const std::string& path);

/// Plain-text report of an elicitation run: Parameters (the merged model),
/// Accuracy, Histogram (per-model accuracy bins), Votes.
std::string elicit_report(const Dataset& data, const ensemble::Ensemble& ens,
                          const TriBParameters& merged,
                          const ensemble::VoteResult& votes,
                          const ReferenceLabels& reference);

/// Report for classifying new alternatives: Votes (vote winner and merged
/// class per row), preceded by an Accuracy section when reference labels are
/// supplied.
std::string classify_report(const StoredEnsemble& stored, const DecisionMatrix& matrix,
                            const ensemble::VoteResult& votes,
                            const trib::Assignment& merged_assignment,
                            const ReferenceLabels* reference = nullptr);

/// Rectangular sweep over two criteria (normalized units); every other
/// criterion is held at a fixed value (default: midpoint of its range). Each
/// point is classified by vote and by the merged model; written as CSV
/// `x,y,vote_class,merged_class`, y varying slowest.
void write_boundary_grid(std::ostream& out, const StoredEnsemble& stored,
                         const TriBParameters& merged, const std::string& x_name,
                         const std::string& y_name, std::size_t resolution,
                         const std::map<std::string, double>& fixed_values);

/// Reads a bare parameter file ({"weights": ..., "q": ..., "p": ..., "v": ...,
/// "profiles": ..., "lambda": ...}; "inf" disables a veto) and validates it.
TriBParameters load_parameters(const std::string& path);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace electre::io

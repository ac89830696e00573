#include "electre/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

using nlohmann::json;

namespace electre::io {

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(strip(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    auto cells = split_line(line);
    if (csv.header.empty()) {
      csv.header = std::move(cells);
      continue;
    }
    if (cells.size() != csv.header.size())
      throw ValidationError("'" + path + "' row " + std::to_string(csv.rows.size() + 1) +
                            " has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(csv.header.size()));
    csv.rows.push_back(std::move(cells));
  }
  if (csv.header.empty()) throw ValidationError("'" + path + "' has no header row");
  return csv;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.empty())
    throw ValidationError("non-numeric cell '" + cell + "' at row " + std::to_string(row + 1) +
                          ", column " + column);
  return value;
}

std::vector<std::string> default_class_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    std::string name(1, static_cast<char>('A' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    names.push_back(std::move(name));
  }
  return names;
}

// Internal class index c (0 = worst) -> display name (names are best first).
const std::string& class_name(const std::vector<std::string>& names, int c) {
  return names[names.size() - 1 - static_cast<std::size_t>(c)];
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known) throw ValidationError("unknown key '" + item.key() + "' in " + where);
  }
}

double json_value(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kNoVeto;
    throw ValidationError(where + ": expected a number or \"inf\", got '" + s + "'");
  }
  if (!v.is_number()) throw ValidationError(where + ": expected a number");
  return v.get<double>();
}

json value_json(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

std::string percent(double fraction) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << fraction * 100.0 << "%";
  return out.str();
}

std::string fixed2(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

void parameter_table(std::ostream& out, const std::vector<std::string>& criteria,
                     const TriBParameters& params) {
  constexpr int kLabel = 24, kCell = 12;
  auto row = [&](const std::string& label, const std::vector<double>& values) {
    out << std::left << std::setw(kLabel) << label << std::right;
    for (double v : values) out << std::setw(kCell) << fixed2(v);
    out << "\n";
  };
  out << std::left << std::setw(kLabel) << "Criterion" << std::right;
  for (const auto& name : criteria) out << std::setw(kCell) << name;
  out << "\n";
  row("Weights", params.weights);
  row("Indifference Threshold", params.q);
  row("Preference Threshold", params.p);
  row("Veto Threshold", params.v);
  for (std::size_t h = 0; h < params.profiles.size(); ++h)
    row("Profile " + std::to_string(h + 1), params.profiles[h]);
  out << std::left << std::setw(kLabel) << "Cutting Level" << std::right
      << std::setw(kCell) << fixed2(params.lambda) << "\n";
}

void vote_table(std::ostream& out, const std::vector<std::string>& ids,
                const std::vector<std::string>& names, const ensemble::VoteResult& votes,
                const std::vector<int>& merged, const std::vector<int>* reference) {
  const std::size_t k = names.size();
  out << std::left << std::setw(10) << "id" << std::right;
  for (std::size_t c = 0; c < k; ++c)
    out << std::setw(8) << class_name(names, static_cast<int>(c));
  out << "  " << std::left << std::setw(8) << "winner" << std::setw(8) << "merged";
  if (reference) out << std::setw(10) << "reference";
  out << "\n" << std::right;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << std::left << std::setw(10) << ids[i] << std::right;
    for (std::size_t c = 0; c < k; ++c) out << std::setw(8) << votes.counts[i][c];
    out << "  " << std::left << std::setw(8) << class_name(names, votes.winners[i])
        << std::setw(8) << class_name(names, merged[i]);
    if (reference) {
      const int r = (*reference)[i];
      out << std::setw(10) << (r < 0 ? std::string("-") : class_name(names, r));
    }
    out << "\n" << std::right;
  }
}

double labeled_accuracy(const std::vector<int>& predicted, const std::vector<int>& reference,
                        std::size_t& correct, std::size_t& labeled) {
  correct = labeled = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (reference[i] < 0) continue;
    ++labeled;
    if (predicted[i] == reference[i]) ++correct;
  }
  return labeled ? static_cast<double>(correct) / static_cast<double>(labeled) : 0.0;
}

}  // namespace

const char* direction_name(Direction d) {
  return d == Direction::maximize ? "max" : "min";
}

Direction direction_from_name(const std::string& name) {
  if (name == "max") return Direction::maximize;
  if (name == "min") return Direction::minimize;
  throw ValidationError("unknown direction '" + name + "' (expected max or min)");
}

const char* normalization_name(Normalization n) {
  return n == Normalization::none ? "none" : "minmax";
}

Normalization normalization_from_name(const std::string& name) {
  if (name == "none") return Normalization::none;
  if (name == "minmax") return Normalization::minmax;
  throw ValidationError("unknown normalization '" + name + "' (expected none or minmax)");
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  RunConfig config;
  try {
    const json j = json::parse(in);
    reject_unknown(j,
                   {"dataset", "directions", "normalization", "classes", "rule",
                    "label_column", "class_names", "models", "sample_fraction", "seed",
                    "trim", "ga", "parameters"},
                   "config");
    config.dataset_path = j.at("dataset").get<std::string>();
    if (j.contains("directions"))
      for (const auto& item : j.at("directions").items())
        config.directions[item.key()] = item.value().get<std::string>();
    if (j.contains("normalization"))
      config.normalization = normalization_from_name(j.at("normalization").get<std::string>());
    config.class_count = j.at("classes").get<std::size_t>();
    if (j.contains("rule")) config.rule = rule_from_name(j.at("rule").get<std::string>());
    if (j.contains("label_column")) config.label_column = j.at("label_column").get<std::string>();
    if (j.contains("class_names"))
      config.class_names = j.at("class_names").get<std::vector<std::string>>();
    if (j.contains("models")) config.build.n_models = j.at("models").get<std::size_t>();
    if (j.contains("sample_fraction"))
      config.build.sample_fraction = j.at("sample_fraction").get<double>();
    if (j.contains("seed")) config.build.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trim") && !j.at("trim").is_null()) config.trim = j.at("trim").get<double>();
    if (j.contains("ga")) {
      const json& g = j.at("ga");
      reject_unknown(g, {"population", "generations", "elites", "mutation_rate", "mu", "eta"},
                     "config.ga");
      auto& ga = config.build.ga;
      if (g.contains("population")) ga.population_size = g.at("population").get<std::size_t>();
      if (g.contains("generations")) ga.generations = g.at("generations").get<std::size_t>();
      if (g.contains("elites")) ga.elite_count = g.at("elites").get<std::size_t>();
      if (g.contains("mutation_rate")) ga.mutation_rate = g.at("mutation_rate").get<double>();
      if (g.contains("mu")) ga.mu = g.at("mu").get<double>();
      if (g.contains("eta")) ga.eta = g.at("eta").get<double>();
    }
    if (j.contains("parameters")) config.parameters = j.at("parameters");
  } catch (const json::exception& e) {
    throw ValidationError("config '" + path + "': " + e.what());
  }
  if (config.class_count < 2) throw ValidationError("config: classes must be at least 2");
  if (!config.class_names.empty() && config.class_names.size() != config.class_count)
    throw ValidationError("config: class_names size != classes");
  return config;
}

Dataset load_dataset(const RunConfig& config) {
  const Csv csv = read_csv(config.dataset_path);
  if (csv.header.empty() || csv.header[0] != "id")
    throw ValidationError("'" + config.dataset_path + "': first header column must be 'id'");

  // A column literally named "label" is recognized without configuration;
  // label_column overrides the name.
  const std::string label_name = config.label_column.empty() ? "label" : config.label_column;
  std::size_t label_col = 0;
  bool has_labels = false;
  std::vector<std::string> criteria;
  std::vector<std::size_t> criterion_cols;
  for (std::size_t c = 1; c < csv.header.size(); ++c) {
    if (csv.header[c] == label_name) {
      label_col = c;
      has_labels = true;
      continue;
    }
    criteria.push_back(csv.header[c]);
    criterion_cols.push_back(c);
  }
  if (!config.label_column.empty() && !has_labels)
    throw ValidationError("'" + config.dataset_path + "': missing column '" +
                          config.label_column + "'");
  for (const auto& [name, dir] : config.directions) {
    direction_from_name(dir);
    if (std::find(criteria.begin(), criteria.end(), name) == criteria.end())
      throw ValidationError("direction given for unknown criterion '" + name + "'");
  }

  Preprocessing prep;
  prep.criteria = criteria;
  prep.normalization = config.normalization;
  for (const auto& name : criteria) {
    auto it = config.directions.find(name);
    prep.directions.push_back(it == config.directions.end() ? Direction::maximize
                                                            : direction_from_name(it->second));
  }
  const auto class_names =
      config.class_names.empty() ? default_class_names(config.class_count) : config.class_names;

  const std::size_t n = csv.rows.size(), m = criteria.size();
  std::vector<std::string> ids;
  std::vector<double> raw(n * m);
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(csv.rows[i][0]);
    for (std::size_t j = 0; j < m; ++j)
      raw[i * m + j] = parse_cell(csv.rows[i][criterion_cols[j]], i, criteria[j]);
  }

  prep.stats.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    double lo = raw[j], hi = raw[j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, raw[i * m + j]);
      hi = std::max(hi, raw[i * m + j]);
    }
    prep.stats[j] = {lo, hi};
    if (config.normalization == Normalization::minmax && lo == hi)
      throw ValidationError("constant column '" + criteria[j] + "' cannot be normalized");
    if (config.normalization == Normalization::none &&
        prep.directions[j] == Direction::minimize)
      throw ValidationError("criterion '" + criteria[j] +
                            "' has direction min; minmax normalization is required to "
                            "reorient it");
  }
  if (config.normalization == Normalization::minmax)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto [lo, hi] = prep.stats[j];
        const double x = raw[i * m + j];
        raw[i * m + j] = prep.directions[j] == Direction::maximize ? (x - lo) / (hi - lo)
                                                                   : (hi - x) / (hi - lo);
      }
  Dataset data{DecisionMatrix(std::move(ids), criteria, std::move(raw)), std::nullopt,
               class_names, std::move(prep)};

  if (has_labels) {
    ReferenceLabels labels;
    labels.class_count = static_cast<int>(config.class_count);
    labels.source = LabelSource::assignment_examples;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& cell = csv.rows[i][label_col];
      if (cell.empty()) {
        labels.labels.push_back(-1);
        continue;
      }
      const auto it = std::find(data.class_names.begin(), data.class_names.end(), cell);
      if (it == data.class_names.end())
        throw ValidationError("unknown class label '" + cell + "' at row " +
                              std::to_string(i + 1));
      // Names are listed best first; internal indices grow toward the best.
      labels.labels.push_back(static_cast<int>(config.class_count - 1 -
                                               static_cast<std::size_t>(
                                                   it - data.class_names.begin())));
    }
    data.labels = std::move(labels);
  }
  return data;
}

DecisionMatrix load_new_alternatives(const std::string& path, const Preprocessing& prep,
                                     const std::vector<std::string>& class_names,
                                     ReferenceLabels* labels_out) {
  const Csv csv = read_csv(path);
  std::vector<std::size_t> cols;
  std::vector<std::string> missing;
  for (const auto& name : prep.criteria) {
    const auto it = std::find(csv.header.begin(), csv.header.end(), name);
    if (it == csv.header.end())
      missing.push_back(name);
    else
      cols.push_back(static_cast<std::size_t>(it - csv.header.begin()));
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& name : missing) joined += (joined.empty() ? "" : ", ") + name;
    throw ValidationError("'" + path + "' is missing criteria: " + joined);
  }

  const std::size_t n = csv.rows.size(), m = prep.criteria.size();
  std::vector<std::string> ids;
  std::vector<double> values(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(csv.rows[i][0]);
    for (std::size_t j = 0; j < m; ++j) {
      double x = parse_cell(csv.rows[i][cols[j]], i, prep.criteria[j]);
      if (prep.normalization == Normalization::minmax) {
        const auto [lo, hi] = prep.stats[j];
        x = prep.directions[j] == Direction::maximize ? (x - lo) / (hi - lo)
                                                      : (hi - x) / (hi - lo);
      }
      values[i * m + j] = x;
    }
  }

  if (labels_out != nullptr) {
    *labels_out = ReferenceLabels{};
    const auto it = std::find(csv.header.begin(), csv.header.end(), "label");
    if (it != csv.header.end() && !class_names.empty()) {
      const auto label_col = static_cast<std::size_t>(it - csv.header.begin());
      const auto k = class_names.size();
      labels_out->class_count = static_cast<int>(k);
      labels_out->source = LabelSource::assignment_examples;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string& cell = csv.rows[i][label_col];
        if (cell.empty()) {
          labels_out->labels.push_back(-1);
          continue;
        }
        const auto pos = std::find(class_names.begin(), class_names.end(), cell);
        if (pos == class_names.end())
          throw ValidationError("unknown class label '" + cell + "' at row " +
                                std::to_string(i + 1));
        labels_out->labels.push_back(
            static_cast<int>(k - 1 -
                             static_cast<std::size_t>(pos - class_names.begin())));
      }
    }
  }
  return DecisionMatrix(std::move(ids), prep.criteria, std::move(values));
}

namespace {

// Fills `out` with one value per criterion from a scalar (broadcast) or an
// m-element array.
std::vector<double> family_values(const json& v, std::size_t m, const std::string& where) {
  std::vector<double> out;
  if (v.is_array()) {
    if (v.size() != m)
      throw ValidationError(where + ": expected " + std::to_string(m) + " values");
    for (const auto& e : v) out.push_back(json_value(e, where));
  } else {
    out.assign(m, json_value(v, where));
  }
  return out;
}

std::vector<std::pair<double, double>> family_bounds(const json& v, std::size_t m,
                                                     const std::string& where) {
  auto pair_of = [&where](const json& e) -> std::pair<double, double> {
    if (!e.is_array() || e.size() != 2)
      throw ValidationError(where + ": expected [lo, hi]");
    return {json_value(e[0], where), json_value(e[1], where)};
  };
  std::vector<std::pair<double, double>> out;
  if (v.is_array() && v.size() == 2 && v[0].is_number())
    out.assign(m, pair_of(v));
  else if (v.is_array()) {
    if (v.size() != m)
      throw ValidationError(where + ": expected " + std::to_string(m) + " bound pairs");
    for (const auto& e : v) out.push_back(pair_of(e));
  } else {
    throw ValidationError(where + ": expected bounds");
  }
  return out;
}

}  // namespace

ElicitationSpec make_spec(const DecisionMatrix& matrix, const RunConfig& config) {
  SpecBuilder builder(matrix, config.class_count);
  const json& p = config.parameters;
  if (p.is_null()) return builder.build();
  reject_unknown(p, {"fix", "bounds"}, "config.parameters");
  const std::size_t m = matrix.cols();

  if (p.contains("fix")) {
    const json& fix = p.at("fix");
    reject_unknown(fix, {"weights", "q", "p", "v", "profiles", "lambda"},
                   "config.parameters.fix");
    auto apply = [&](const char* key, SpecBuilder& (SpecBuilder::*setter)(std::size_t, double)) {
      if (!fix.contains(key)) return;
      const auto values = family_values(fix.at(key), m, std::string("fix.") + key);
      for (std::size_t j = 0; j < m; ++j) (builder.*setter)(j, values[j]);
    };
    apply("weights", &SpecBuilder::fix_weight);
    apply("q", &SpecBuilder::fix_q);
    apply("p", &SpecBuilder::fix_p);
    apply("v", &SpecBuilder::fix_v);
    if (fix.contains("profiles")) {
      const json& rows = fix.at("profiles");
      if (!rows.is_array() || rows.size() != config.class_count - 1)
        throw ValidationError("fix.profiles: expected " +
                              std::to_string(config.class_count - 1) + " rows");
      for (std::size_t h = 0; h < rows.size(); ++h) {
        const auto values = family_values(rows[h], m, "fix.profiles");
        for (std::size_t j = 0; j < m; ++j) builder.fix_profile(h, j, values[j]);
      }
    }
    if (fix.contains("lambda"))
      builder.fix_lambda(json_value(fix.at("lambda"), "fix.lambda"));
  }

  if (p.contains("bounds")) {
    const json& bounds = p.at("bounds");
    reject_unknown(bounds, {"weights", "q", "p", "v", "profiles", "lambda"},
                   "config.parameters.bounds");
    auto apply = [&](const char* key,
                     SpecBuilder& (SpecBuilder::*setter)(std::size_t, double, double)) {
      if (!bounds.contains(key)) return;
      const auto pairs = family_bounds(bounds.at(key), m, std::string("bounds.") + key);
      for (std::size_t j = 0; j < m; ++j) (builder.*setter)(j, pairs[j].first, pairs[j].second);
    };
    apply("weights", &SpecBuilder::bound_weight);
    apply("q", &SpecBuilder::bound_q);
    apply("p", &SpecBuilder::bound_p);
    apply("v", &SpecBuilder::bound_v);
    if (bounds.contains("profiles")) {
      const json& rows = bounds.at("profiles");
      if (!rows.is_array() || rows.size() != config.class_count - 1)
        throw ValidationError("bounds.profiles: expected " +
                              std::to_string(config.class_count - 1) + " rows");
      for (std::size_t h = 0; h < rows.size(); ++h) {
        const auto pairs = family_bounds(rows[h], m, "bounds.profiles");
        for (std::size_t j = 0; j < m; ++j)
          builder.bound_profile(h, j, pairs[j].first, pairs[j].second);
      }
    }
    if (bounds.contains("lambda")) {
      const auto pair = family_bounds(bounds.at("lambda"), 1, "bounds.lambda");
      builder.bound_lambda(pair[0].first, pair[0].second);
    }
  }
  return builder.build();
}

namespace {

json params_json(const TriBParameters& params) {
  json j;
  j["weights"] = params.weights;
  j["q"] = params.q;
  j["p"] = params.p;
  json v = json::array();
  for (double x : params.v) v.push_back(value_json(x));
  j["v"] = std::move(v);
  j["profiles"] = params.profiles;
  j["lambda"] = params.lambda;
  return j;
}

TriBParameters params_from_json(const json& j) {
  TriBParameters params;
  params.weights = j.at("weights").get<std::vector<double>>();
  params.q = j.at("q").get<std::vector<double>>();
  params.p = j.at("p").get<std::vector<double>>();
  for (const auto& e : j.at("v")) params.v.push_back(json_value(e, "v"));
  params.profiles = j.at("profiles").get<std::vector<std::vector<double>>>();
  params.lambda = j.at("lambda").get<double>();
  return params;
}

}  // namespace

void save_ensemble(const std::string& path, const StoredEnsemble& stored) {
  json j;
  j["format"] = "electre-tree-ensemble";
  j["version"] = 1;
  j["rule"] = rule_name(stored.ensemble.rule);
  j["class_count"] = stored.ensemble.class_count;
  j["fingerprint"] = stored.ensemble.fingerprint;
  j["criteria"] = stored.prep.criteria;
  json dirs = json::array();
  for (auto d : stored.prep.directions) dirs.push_back(direction_name(d));
  j["directions"] = std::move(dirs);
  j["normalization"] = normalization_name(stored.prep.normalization);
  json stats = json::array();
  for (const auto& s : stored.prep.stats) stats.push_back({{"min", s.min}, {"max", s.max}});
  j["stats"] = std::move(stats);
  j["class_names"] = stored.class_names;
  j["config"] = {{"n_models", stored.ensemble.config.n_models},
                 {"sample_fraction", stored.ensemble.config.sample_fraction},
                 {"master_seed", stored.ensemble.config.master_seed},
                 {"ga",
                  {{"population", stored.ensemble.config.ga.population_size},
                   {"generations", stored.ensemble.config.ga.generations},
                   {"elites", stored.ensemble.config.ga.elite_count},
                   {"mutation_rate", stored.ensemble.config.ga.mutation_rate},
                   {"mu", stored.ensemble.config.ga.mu},
                   {"eta", stored.ensemble.config.ga.eta}}}};
  json models = json::array();
  for (const auto& model : stored.ensemble.models) {
    json record;
    record["rows"] = model.alternative_indices;
    record["criteria"] = model.criterion_indices;
    record["accuracy"] = model.accuracy;
    record["params"] = params_json(model.params);
    models.push_back(std::move(record));
  }
  j["models"] = std::move(models);
  j["merged_params"] = params_json(stored.merged);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

StoredEnsemble load_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    const json j = json::parse(in);
    if (j.at("format").get<std::string>() != "electre-tree-ensemble")
      throw ValidationError("'" + path + "' is not an ensemble file");
    if (j.at("version").get<int>() != 1)
      throw ValidationError("'" + path + "': unsupported version");

    StoredEnsemble stored;
    stored.ensemble.rule = rule_from_name(j.at("rule").get<std::string>());
    stored.ensemble.class_count = j.at("class_count").get<std::size_t>();
    stored.ensemble.fingerprint = j.at("fingerprint").get<std::uint64_t>();
    stored.prep.criteria = j.at("criteria").get<std::vector<std::string>>();
    for (const auto& d : j.at("directions"))
      stored.prep.directions.push_back(direction_from_name(d.get<std::string>()));
    stored.prep.normalization =
        normalization_from_name(j.at("normalization").get<std::string>());
    for (const auto& s : j.at("stats"))
      stored.prep.stats.push_back({s.at("min").get<double>(), s.at("max").get<double>()});
    stored.class_names = j.at("class_names").get<std::vector<std::string>>();
    const json& c = j.at("config");
    stored.ensemble.config.n_models = c.at("n_models").get<std::size_t>();
    stored.ensemble.config.sample_fraction = c.at("sample_fraction").get<double>();
    stored.ensemble.config.master_seed = c.at("master_seed").get<std::uint64_t>();
    const json& g = c.at("ga");
    stored.ensemble.config.ga.population_size = g.at("population").get<std::size_t>();
    stored.ensemble.config.ga.generations = g.at("generations").get<std::size_t>();
    stored.ensemble.config.ga.elite_count = g.at("elites").get<std::size_t>();
    stored.ensemble.config.ga.mutation_rate = g.at("mutation_rate").get<double>();
    stored.ensemble.config.ga.mu = g.at("mu").get<double>();
    stored.ensemble.config.ga.eta = g.at("eta").get<double>();
    for (const auto& record : j.at("models")) {
      ensemble::ModelRecord model;
      model.alternative_indices = record.at("rows").get<std::vector<std::size_t>>();
      model.criterion_indices = record.at("criteria").get<std::vector<std::size_t>>();
      model.accuracy = record.at("accuracy").get<double>();
      model.params = params_from_json(record.at("params"));
      stored.ensemble.models.push_back(std::move(model));
    }
    stored.merged = params_from_json(j.at("merged_params"));
    return stored;
  } catch (const json::exception& e) {
    throw ValidationError("ensemble '" + path + "': " + e.what());
  }
}

TriBParameters load_parameters(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  TriBParameters params;
  try {
    const json j = json::parse(in);
    reject_unknown(j, {"weights", "q", "p", "v", "profiles", "lambda"}, "parameter file");
    params = params_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError("parameters '" + path + "': " + e.what());
  }
  if (params.profiles.empty())
    throw ValidationError("parameters '" + path + "': at least one profile is required");
  const auto report =
      validate_parameters(params, params.weights.size(), params.profiles.size() + 1);
  if (!report.ok()) {
    std::string joined;
    for (const auto& v : report.violations) joined += (joined.empty() ? "" : "; ") + v;
    throw ValidationError("parameters '" + path + "': " + joined);
  }
  return params;
}

std::string elicit_report(const Dataset& data, const ensemble::Ensemble& ens,
                          const TriBParameters& merged,
                          const ensemble::VoteResult& votes,
                          const ReferenceLabels& reference) {
  std::ostringstream out;
  out << "== Parameters ==\n";
  parameter_table(out, data.matrix.criteria(), merged);

  const auto merged_assign = trib::classify_serial(data.matrix, merged, ens.rule);
  std::size_t correct = 0, labeled = 0;
  const double merged_acc =
      labeled_accuracy(merged_assign.classes, reference.labels, correct, labeled);
  out << std::left << std::setw(24) << "Accuracy" << std::right << std::setw(12)
      << percent(merged_acc) << "\n";

  out << "\n== Accuracy ==\n";
  out << "Merged model: " << percent(merged_acc) << " (" << correct << "/" << labeled << ")\n";
  const double vote_acc = labeled_accuracy(votes.winners, reference.labels, correct, labeled);
  out << "Voting: " << percent(vote_acc) << " (" << correct << "/" << labeled << ")\n";
  double mean = 0.0;
  std::size_t perfect = 0;
  for (const auto& model : ens.models) {
    mean += model.accuracy;
    if (model.accuracy == 1.0) ++perfect;
  }
  mean /= static_cast<double>(ens.models.size());
  out << "Mean model accuracy: " << percent(mean) << "\n";
  out << "Models at 100%: " << perfect << "/" << ens.models.size() << "\n";

  out << "\n== Histogram ==\n";
  std::array<std::size_t, 11> bins{};
  for (const auto& model : ens.models) {
    const auto b = model.accuracy >= 1.0
                       ? std::size_t{10}
                       : static_cast<std::size_t>(model.accuracy * 10.0);
    ++bins[std::min(b, std::size_t{10})];
  }
  for (std::size_t b = 0; b < 10; ++b)
    out << "[" << std::setw(3) << b * 10 << "%," << std::setw(3) << (b + 1) * 10 << "%)"
        << std::setw(8) << bins[b] << "\n";
  out << "[100%]" << std::setw(12) << bins[10] << "\n";

  out << "\n== Votes ==\n";
  vote_table(out, data.matrix.alternatives(), data.class_names, votes, merged_assign.classes,
             &reference.labels);
  return out.str();
}

std::string classify_report(const StoredEnsemble& stored, const DecisionMatrix& matrix,
                            const ensemble::VoteResult& votes,
                            const trib::Assignment& merged_assignment,
                            const ReferenceLabels* reference) {
  std::ostringstream out;
  const bool with_reference = reference != nullptr && reference->labeled_count() > 0;
  if (with_reference) {
    std::size_t correct = 0, labeled = 0;
    out << "== Accuracy ==\n";
    const double merged_acc =
        labeled_accuracy(merged_assignment.classes, reference->labels, correct, labeled);
    out << "Merged model: " << percent(merged_acc) << " (" << correct << "/" << labeled
        << ")\n";
    const double vote_acc =
        labeled_accuracy(votes.winners, reference->labels, correct, labeled);
    out << "Voting: " << percent(vote_acc) << " (" << correct << "/" << labeled << ")\n";
    out << "\n";
  }
  out << "== Votes ==\n";
  vote_table(out, matrix.alternatives(), stored.class_names, votes,
             merged_assignment.classes, with_reference ? &reference->labels : nullptr);
  return out.str();
}

void write_boundary_grid(std::ostream& out, const StoredEnsemble& stored,
                         const TriBParameters& merged, const std::string& x_name,
                         const std::string& y_name, std::size_t resolution,
                         const std::map<std::string, double>& fixed_values) {
  if (resolution < 2) throw ValidationError("grid resolution must be at least 2");
  const auto& prep = stored.prep;
  auto index_of = [&prep](const std::string& name) {
    const auto it = std::find(prep.criteria.begin(), prep.criteria.end(), name);
    if (it == prep.criteria.end())
      throw ValidationError("unknown criterion '" + name + "'");
    return static_cast<std::size_t>(it - prep.criteria.begin());
  };
  const std::size_t xj = index_of(x_name), yj = index_of(y_name);
  if (xj == yj) throw ValidationError("grid axes must differ");
  for (const auto& [name, value] : fixed_values) {
    (void)value;
    index_of(name);
  }

  // Normalized data lives in [0,1]; raw data keeps its observed column range.
  auto range_of = [&prep](std::size_t j) -> std::pair<double, double> {
    if (prep.normalization == Normalization::minmax) return {0.0, 1.0};
    return {prep.stats[j].min, prep.stats[j].max};
  };
  const std::size_t m = prep.criteria.size();
  std::vector<double> row(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto [lo, hi] = range_of(j);
    const auto it = fixed_values.find(prep.criteria[j]);
    row[j] = it != fixed_values.end() ? it->second : 0.5 * (lo + hi);
  }

  const auto [xlo, xhi] = range_of(xj);
  const auto [ylo, yhi] = range_of(yj);
  const double dx = (xhi - xlo) / static_cast<double>(resolution - 1);
  const double dy = (yhi - ylo) / static_cast<double>(resolution - 1);

  out << "x,y,vote_class,merged_class\n";
  for (std::size_t yi = 0; yi < resolution; ++yi) {
    row[yj] = ylo + dy * static_cast<double>(yi);
    for (std::size_t xi = 0; xi < resolution; ++xi) {
      row[xj] = xlo + dx * static_cast<double>(xi);
      const int vote = ensemble::vote_one(stored.ensemble, row);
      const int merged_class = trib::classify_one(row, merged, stored.ensemble.rule);
      out << format_double(row[xj]) << "," << format_double(row[yj]) << "," << vote << ","
          << merged_class << "\n";
    }
  }
}

}  // namespace electre::io

#pragma once

// Shared fixtures for the test binaries: the 64-alternative demo table from
// data/dataset1.csv, its known class structure, and small helpers for
// building matrices and scratch files. Tests run with the repository root as
// working directory (see tests/CMakeLists.txt), so data/ paths are relative.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "electre/core.hpp"
#include "electre/io.hpp"
#include "electre/rng.hpp"

namespace support {

// Post-ingestion view of data/dataset1.csv: two maximization criteria, no
// normalization needed.
inline electre::DecisionMatrix dataset1() {
  electre::io::Preprocessing prep;
  prep.criteria = {"g1", "g2"};
  prep.directions = {electre::io::Direction::maximize, electre::io::Direction::maximize};
  prep.normalization = electre::io::Normalization::none;
  prep.stats = {{1.0, 26.0}, {1.0, 18.0}};
  return electre::io::load_new_alternatives("data/dataset1.csv", prep);
}

// Ground-truth classes of dataset1: the table was generated in four blocks of
// 16 (x1..x16 worst ... x49..x64 best), so the label is the row quartile.
inline electre::ReferenceLabels dataset1_labels() {
  electre::ReferenceLabels out;
  out.class_count = 4;
  out.source = electre::LabelSource::assignment_examples;
  out.labels.resize(64);
  for (int i = 0; i < 64; ++i) out.labels[i] = i / 16;
  return out;
}

// A frozen reference sub-model for dataset1 (16 sampled alternatives, both
// criteria). Classifies its own sample perfectly under the pessimistic rule.
inline electre::TriBParameters sample_model_params() {
  electre::TriBParameters p;
  p.weights = {0.53, 0.29};
  p.q = {1.13, 1.67};
  p.p = {1.57, 6.73};
  p.v = {3.45, 6.77};
  p.profiles = {{1.24, 6.77}, {19.59, 10.95}, {20.83, 15.38}};
  p.lambda = 0.86;
  return p;
}

// Row indices (0-based) of the alternatives that sub-model saw.
inline std::vector<std::size_t> sample_model_rows() {
  return {3, 6, 7, 12, 16, 18, 25, 27, 32, 34, 35, 37, 39, 49, 51, 63};
}

// A frozen reference merged model for dataset1; scores 58/64 on the full table.
inline electre::TriBParameters merged_model_params() {
  electre::TriBParameters p;
  p.weights = {0.52, 0.49};
  p.q = {3.78, 2.70};
  p.p = {5.83, 3.82};
  p.v = {10.70, 5.68};
  p.profiles = {{9.50, 8.20}, {17.12, 10.68}, {19.87, 13.45}};
  p.lambda = 0.76;
  return p;
}

// Random matrix with values in [lo, hi); rows named r1..rN, criteria c1..cM.
inline electre::DecisionMatrix random_matrix(electre::Rng& rng, std::size_t rows,
                                             std::size_t cols, double lo, double hi) {
  std::vector<std::string> alternatives, criteria;
  std::vector<double> values;
  for (std::size_t i = 0; i < rows; ++i) alternatives.push_back("r" + std::to_string(i + 1));
  for (std::size_t j = 0; j < cols; ++j) criteria.push_back("c" + std::to_string(j + 1));
  for (std::size_t i = 0; i < rows * cols; ++i) values.push_back(rng.uniform(lo, hi));
  return {std::move(alternatives), std::move(criteria), std::move(values)};
}

// Scratch file that deletes itself; contents are written on construction.
class TempFile {
 public:
  TempFile(const std::string& stem, const std::string& contents) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
                .string();
    std::ofstream out(path_);
    out << contents;
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() { std::filesystem::remove(path_); }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace support

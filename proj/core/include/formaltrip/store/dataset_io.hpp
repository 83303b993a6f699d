#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formaltrip/grammar/dataset.hpp"

namespace formaltrip::store {

struct ManifestFile {
  std::size_t batch = 1;
  std::string name;
  std::size_t records = 0;
  std::string sha256;

  bool operator==(const ManifestFile&) const = default;
};

struct CategoryTotal {
  double value = 0.0;
  std::size_t records = 0;

  bool operator==(const CategoryTotal&) const = default;
};

struct Manifest {
  std::string tool_version;
  std::string grammar_id;
  syntax::Formalism formalism = syntax::Formalism::Prop;
  syntax::Metric metric = syntax::Metric::OperatorTotal;
  grammar::GenerationConfig generation;
  grammar::Vocabulary vocabulary;
  std::vector<ManifestFile> files;
  std::vector<grammar::BatchSummary> batches;
  std::vector<CategoryTotal> totals;  // ascending by value, summed over batches
  std::vector<std::string> underfilled;

  std::size_t record_count() const;

  bool operator==(const Manifest&) const = default;
};

/// `<grammar_id>_<metric>_manifest.json`
std::string manifest_file_name(std::string_view grammar_id, syntax::Metric m);

std::string manifest_to_json(const Manifest& m);
Manifest manifest_from_json(std::string_view text);

/// Writes one JSONL file per batch and the manifest into `dir`; returns the manifest.
Manifest write_dataset(const grammar::Dataset& d, const std::filesystem::path& dir);
/// Reassembles a dataset from a manifest and the batch files next to it; throws IoError
/// when a batch file is missing or its digest differs from the manifest.
grammar::Dataset read_dataset(const std::filesystem::path& manifest_path);

void write_dataset_file(std::span<const grammar::DatasetRecord> records,
                        const std::filesystem::path& path);
std::vector<grammar::DatasetRecord> read_dataset_file(const std::filesystem::path& path);

Manifest read_manifest(const std::filesystem::path& path);

std::string file_sha256(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it into place.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Batch files named by `spec`: an existing file path, a directory of batch files, or a
/// shorthand such as `prop_batch1` / `prop` matched against the files in `search_dir`.
std::vector<std::filesystem::path> resolve_dataset(std::string_view spec,
                                                   const std::filesystem::path& search_dir);

}  // namespace formaltrip::store

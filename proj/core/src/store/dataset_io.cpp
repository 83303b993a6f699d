#include "formaltrip/store/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "formaltrip/common/error.hpp"
#include "formaltrip/common/hash.hpp"
#include "formaltrip/common/version.hpp"
#include "formaltrip/store/codec.hpp"
#include "store/json_codec.hpp"

namespace formaltrip::store {

namespace fs = std::filesystem;
using detail::ojson;

std::size_t Manifest::record_count() const {
  std::size_t n = 0;
  for (const auto& f : files) n += f.records;
  return n;
}

std::string manifest_file_name(std::string_view grammar_id, syntax::Metric m) {
  return std::string(grammar_id) + "_" + std::string(syntax::to_string(m)) + "_manifest.json";
}

std::string manifest_to_json(const Manifest& m) {
  ojson j;
  j["tool_version"] = m.tool_version;
  j["grammar_id"] = m.grammar_id;
  j["formalism"] = std::string(syntax::to_string(m.formalism));
  j["metric"] = std::string(syntax::to_string(m.metric));
  j["generation"] = detail::generation_json(m.generation);
  j["vocabulary"] = detail::vocabulary_json(m.vocabulary);
  j["record_count"] = m.record_count();
  ojson files = ojson::array();
  for (const auto& f : m.files) {
    files.push_back({{"batch", f.batch}, {"name", f.name}, {"records", f.records},
                     {"sha256", f.sha256}});
  }
  j["files"] = files;
  ojson batches = ojson::array();
  for (const auto& b : m.batches) {
    ojson cats = ojson::array();
    for (const auto& c : b.categories) {
      cats.push_back({{"value", detail::category_json(m.metric, c.value)},
                      {"available", c.available},
                      {"taken", c.taken}});
    }
    batches.push_back({{"index", b.index}, {"seed", b.seed}, {"leaves", b.leaves},
                       {"categories", cats}});
  }
  j["batches"] = batches;
  ojson totals = ojson::array();
  for (const auto& t : m.totals) {
    totals.push_back({{"value", detail::category_json(m.metric, t.value)},
                      {"records", t.records}});
  }
  j["totals"] = totals;
  j["underfilled"] = m.underfilled;
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(std::string_view text) {
  const ojson j = detail::parse_line(text, "manifest");
  try {
    Manifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.grammar_id = j.at("grammar_id").get<std::string>();
    m.formalism = syntax::formalism_from_string(j.at("formalism").get<std::string>());
    m.metric = syntax::metric_from_string(j.at("metric").get<std::string>());
    m.generation = detail::generation_from(j.at("generation"));
    m.vocabulary = detail::vocabulary_from(j.at("vocabulary"));
    for (const auto& f : j.at("files")) {
      m.files.push_back({f.at("batch").get<std::size_t>(), f.at("name").get<std::string>(),
                         f.at("records").get<std::size_t>(), f.at("sha256").get<std::string>()});
    }
    for (const auto& b : j.at("batches")) {
      grammar::BatchSummary s;
      s.index = b.at("index").get<std::size_t>();
      s.seed = b.at("seed").get<std::uint64_t>();
      s.leaves = b.at("leaves").get<std::size_t>();
      for (const auto& c : b.at("categories")) {
        s.categories.push_back({c.at("value").get<double>(), c.at("available").get<std::size_t>(),
                                c.at("taken").get<std::size_t>()});
      }
      m.batches.push_back(std::move(s));
    }
    for (const auto& t : j.at("totals")) {
      m.totals.push_back({t.at("value").get<double>(), t.at("records").get<std::size_t>()});
    }
    m.underfilled = j.at("underfilled").get<std::vector<std::string>>();
    return m;
  } catch (const ojson::exception& e) {
    throw IoError(std::string("incomplete manifest: ") + e.what());
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string file_sha256(const fs::path& path) { return sha256_hex(read_text_file(path)); }

namespace {

std::string encode_records(std::span<const grammar::DatasetRecord> records) {
  std::string text;
  for (const auto& r : records) {
    text += to_json_line(r);
    text += '\n';
  }
  return text;
}

std::vector<grammar::DatasetRecord> decode_records(const std::string& text,
                                                   const fs::path& origin) {
  std::vector<grammar::DatasetRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(dataset_record_from_json(line));
    } catch (const Error& e) {
      throw IoError(origin.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

void write_dataset_file(std::span<const grammar::DatasetRecord> records, const fs::path& path) {
  write_text_file(path, encode_records(records));
}

std::vector<grammar::DatasetRecord> read_dataset_file(const fs::path& path) {
  return decode_records(read_text_file(path), path);
}

Manifest read_manifest(const fs::path& path) { return manifest_from_json(read_text_file(path)); }

Manifest write_dataset(const grammar::Dataset& d, const fs::path& dir) {
  Manifest m;
  m.tool_version = std::string(version());
  m.grammar_id = d.grammar_id;
  m.formalism = d.formalism;
  m.metric = d.metric;
  m.generation = d.config;
  m.vocabulary = d.vocabulary;
  m.batches = d.summaries;
  m.underfilled = d.underfilled();
  std::map<double, std::size_t> totals;
  for (std::size_t b = 0; b < d.batches.size(); ++b) {
    const std::string name = grammar::batch_file_name(d.grammar_id, d.metric, b + 1);
    const std::string text = encode_records(d.batches[b]);
    write_text_file(dir / name, text);
    m.files.push_back({b + 1, name, d.batches[b].size(), sha256_hex(text)});
    for (const auto& r : d.batches[b]) ++totals[r.category_value];
  }
  for (const auto& [value, n] : totals) m.totals.push_back({value, n});
  write_text_file(dir / manifest_file_name(d.grammar_id, d.metric), manifest_to_json(m));
  return m;
}

grammar::Dataset read_dataset(const fs::path& manifest_path) {
  const Manifest m = read_manifest(manifest_path);
  grammar::Dataset d;
  d.grammar_id = m.grammar_id;
  d.formalism = m.formalism;
  d.metric = m.metric;
  d.config = m.generation;
  d.vocabulary = m.vocabulary;
  d.summaries = m.batches;
  for (const auto& f : m.files) {
    const fs::path path = manifest_path.parent_path() / f.name;
    const std::string text = read_text_file(path);
    if (sha256_hex(text) != f.sha256) {
      throw IoError(path.string() + " does not match the digest in its manifest");
    }
    d.batches.push_back(decode_records(text, path));
  }
  return d;
}

std::vector<fs::path> resolve_dataset(std::string_view spec, const fs::path& search_dir) {
  const fs::path direct(spec);
  if (fs::is_regular_file(direct)) return {direct};
  std::vector<fs::path> found;
  auto collect = [&](const fs::path& dir, auto&& keep) {
    if (!fs::is_directory(dir)) return;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto& p = entry.path();
      if (entry.is_regular_file() && p.extension() == ".jsonl" &&
          p.filename().string().find("_batch") != std::string::npos && keep(p)) {
        found.push_back(p);
      }
    }
  };
  if (fs::is_directory(direct)) {
    collect(direct, [](const fs::path&) { return true; });
  } else {
    // prop_batch1 -> prop_<metric>_batch1.jsonl, prop -> every prop batch
    const std::string s(spec);
    const auto cut = s.rfind("_batch");
    const std::string grammar_id = cut == std::string::npos ? s : s.substr(0, cut);
    const std::string suffix = cut == std::string::npos ? "" : s.substr(cut) + ".jsonl";
    for (const fs::path& dir : {search_dir, search_dir / "datasets"}) {
      collect(dir, [&](const fs::path& p) {
        const std::string name = p.filename().string();
        if (name.rfind(grammar_id + "_", 0) != 0) return false;
        if (!suffix.empty()) {
          return name.size() >= suffix.size() &&
                 name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
        }
        return true;
      });
    }
  }
  if (found.empty()) throw IoError("no dataset files match '" + std::string(spec) + "'");
  std::sort(found.begin(), found.end(), [](const fs::path& a, const fs::path& b) {
    const std::string sa = a.filename().string(), sb = b.filename().string();
    const auto na = std::stoul(sa.substr(sa.rfind("_batch") + 6));
    const auto nb = std::stoul(sb.substr(sb.rfind("_batch") + 6));
    return std::tie(na, sa) < std::tie(nb, sb);
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace formaltrip::store

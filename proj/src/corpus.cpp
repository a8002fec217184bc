#include "capfair/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "capfair/errors.hpp"

namespace capfair {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

void dump_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

// Lists at most `limit` ids, then "and N more".
std::string format_id_list(const std::vector<std::int64_t>& ids, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  if (ids.size() > limit) out += fmt::format(" and {} more", ids.size() - limit);
  return out;
}

GenderLabel parse_label(const std::string& raw, const std::string& context) {
  const std::string label = lowercase(raw);
  if (label == "male") return GenderLabel::Male;
  if (label == "female") return GenderLabel::Female;
  if (label == "unknown") return GenderLabel::Unknown;
  throw ValidationError(fmt::format(
      "{}: label '{}' is not one of male/female/unknown", context, raw));
}

GenderPredictionFile load_predictions_json(const std::filesystem::path& path) {
  const json root = parse_json_file(path);
  if (!root.is_array())
    throw ParseError(fmt::format("'{}': expected a JSON array of prediction records",
                                 path.string()));
  GenderPredictionFile file;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& rec = root[i];
    const std::string context = fmt::format("'{}' entry {}", path.string(), i);
    if (!rec.is_object() || !rec.contains("image_id") ||
        !rec["image_id"].is_number_integer() || !rec.contains("label") ||
        !rec["label"].is_string())
      throw ParseError(fmt::format("{}: expected {{image_id, label, confidence?}}", context));
    const std::int64_t id = rec["image_id"].get<std::int64_t>();
    GenderPrediction pred;
    pred.label = parse_label(rec["label"].get<std::string>(), context);
    if (rec.contains("confidence") && !rec["confidence"].is_null()) {
      if (!rec["confidence"].is_number())
        throw ParseError(fmt::format("{}: confidence must be a number", context));
      pred.confidence = rec["confidence"].get<double>();
    }
    if (pred.confidence && (*pred.confidence < 0.0 || *pred.confidence > 1.0))
      throw ValidationError(
          fmt::format("{}: confidence {} outside [0,1]", context, *pred.confidence));
    if (!file.entries.emplace(id, pred).second)
      throw ValidationError(
          fmt::format("'{}': duplicate image_id {}", path.string(), id));
  }
  return file;
}

GenderPredictionFile load_predictions_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  GenderPredictionFile file;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (line.back() == ',') fields.emplace_back();
    if (!saw_header) {
      if (fields.size() < 2 || lowercase(fields[0]) != "image_id" ||
          lowercase(fields[1]) != "label")
        throw ParseError(fmt::format(
            "'{}': expected CSV header image_id,label[,confidence]", path.string()));
      saw_header = true;
      continue;
    }
    const std::string context = fmt::format("'{}' line {}", path.string(), line_no);
    if (fields.size() < 2)
      throw ParseError(fmt::format("{}: expected image_id,label[,confidence]", context));
    std::int64_t id = 0;
    try {
      id = std::stoll(fields[0]);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("{}: image_id '{}' is not an integer", context, fields[0]));
    }
    GenderPrediction pred;
    pred.label = parse_label(fields[1], context);
    if (fields.size() >= 3 && !fields[2].empty()) {
      try {
        pred.confidence = std::stod(fields[2]);
      } catch (const std::exception&) {
        throw ParseError(fmt::format("{}: confidence '{}' is not a number", context, fields[2]));
      }
      if (*pred.confidence < 0.0 || *pred.confidence > 1.0)
        throw ValidationError(
            fmt::format("{}: confidence {} outside [0,1]", context, *pred.confidence));
    }
    if (!file.entries.emplace(id, pred).second)
      throw ValidationError(fmt::format("'{}': duplicate image_id {}", path.string(), id));
  }
  if (!saw_header)
    throw ParseError(fmt::format("'{}': empty CSV, expected a header line", path.string()));
  return file;
}

bool looks_like_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  char c;
  while (in.get(c)) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' || c == '{';
  }
  return true;  // empty file: let the JSON parser report it
}

}  // namespace

Corpus::Corpus(std::vector<ImageRecord> images, std::string source_label)
    : images_(std::move(images)), source_label_(std::move(source_label)) {
  std::sort(images_.begin(), images_.end(),
            [](const ImageRecord& a, const ImageRecord& b) { return a.image_id < b.image_id; });
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const ImageRecord& rec = images_[i];
    if (i > 0 && rec.image_id == images_[i - 1].image_id)
      throw ValidationError(fmt::format("corpus: duplicate image_id {}", rec.image_id));
    if (rec.captions.empty())
      throw ValidationError(
          fmt::format("corpus: image {} has no captions", rec.image_id));
    for (const std::string& cap : rec.captions)
      if (trim(cap).empty())
        throw ValidationError(
            fmt::format("corpus: image {} has an empty caption", rec.image_id));
  }
}

const ImageRecord* Corpus::find(std::int64_t image_id) const {
  auto it = std::lower_bound(
      images_.begin(), images_.end(), image_id,
      [](const ImageRecord& rec, std::int64_t id) { return rec.image_id < id; });
  if (it == images_.end() || it->image_id != image_id) return nullptr;
  return &*it;
}

Corpus load_coco_annotations(const std::filesystem::path& path) {
  const json root = parse_json_file(path);
  if (!root.is_object() || !root.contains("images") || !root["images"].is_array() ||
      !root.contains("annotations") || !root["annotations"].is_array())
    throw ParseError(fmt::format(
        "'{}': expected an object with 'images' and 'annotations' arrays",
        path.string()));

  struct Slot {
    std::string file_name;
    std::vector<std::string> captions;
  };
  std::unordered_map<std::int64_t, Slot> slots;
  std::vector<std::int64_t> order;

  const json& images = root["images"];
  for (std::size_t i = 0; i < images.size(); ++i) {
    const json& rec = images[i];
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_number_integer())
      throw ParseError(
          fmt::format("'{}': images[{}] missing integer 'id'", path.string(), i));
    const std::int64_t id = rec["id"].get<std::int64_t>();
    Slot slot;
    if (rec.contains("file_name")) {
      if (!rec["file_name"].is_string())
        throw ParseError(
            fmt::format("'{}': images[{}] file_name is not a string", path.string(), i));
      slot.file_name = rec["file_name"].get<std::string>();
    }
    if (!slots.emplace(id, std::move(slot)).second)
      throw ValidationError(
          fmt::format("'{}': duplicate image id {}", path.string(), id));
    order.push_back(id);
  }

  std::vector<std::int64_t> unknown_ids;
  const json& annotations = root["annotations"];
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const json& rec = annotations[i];
    if (!rec.is_object() || !rec.contains("image_id") ||
        !rec["image_id"].is_number_integer() || !rec.contains("caption") ||
        !rec["caption"].is_string())
      throw ParseError(fmt::format(
          "'{}': annotations[{}] missing integer 'image_id' or string 'caption'",
          path.string(), i));
    const std::int64_t id = rec["image_id"].get<std::int64_t>();
    auto it = slots.find(id);
    if (it == slots.end()) {
      unknown_ids.push_back(id);
      continue;
    }
    std::string caption = rec["caption"].get<std::string>();
    if (trim(caption).empty())
      throw ValidationError(fmt::format(
          "'{}': annotations[{}] has an empty caption for image {}", path.string(), i, id));
    it->second.captions.push_back(std::move(caption));
  }
  if (!unknown_ids.empty()) {
    std::sort(unknown_ids.begin(), unknown_ids.end());
    unknown_ids.erase(std::unique(unknown_ids.begin(), unknown_ids.end()),
                      unknown_ids.end());
    throw ValidationError(fmt::format(
        "'{}': annotations reference unknown image ids: {}", path.string(),
        format_id_list(unknown_ids)));
  }

  std::vector<ImageRecord> records;
  records.reserve(slots.size());
  std::vector<std::int64_t> dropped;
  for (const std::int64_t id : order) {
    Slot& slot = slots.at(id);
    if (slot.captions.empty()) {
      dropped.push_back(id);
      continue;
    }
    records.push_back(
        ImageRecord{id, std::move(slot.file_name), std::move(slot.captions)});
  }
  if (!dropped.empty()) {
    std::sort(dropped.begin(), dropped.end());
    log_warning(fmt::format("'{}': dropped {} image(s) without annotations: {}",
                            path.string(), dropped.size(), format_id_list(dropped, 10)));
  }

  std::string label = path.filename().string();
  if (root.contains("info") && root["info"].is_object() &&
      root["info"].contains("description") && root["info"]["description"].is_string())
    label = root["info"]["description"].get<std::string>();
  return Corpus(std::move(records), std::move(label));
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  json root = json::object();
  root["info"] = {{"description", corpus.source_label()}};
  json images = json::array();
  json annotations = json::array();
  std::int64_t next_annotation_id = 1;
  for (const ImageRecord& rec : corpus.images()) {
    images.push_back({{"id", rec.image_id}, {"file_name", rec.file_name}});
    for (const std::string& cap : rec.captions) {
      annotations.push_back(
          {{"id", next_annotation_id++}, {"image_id", rec.image_id}, {"caption", cap}});
    }
  }
  root["images"] = std::move(images);
  root["annotations"] = std::move(annotations);
  dump_json_file(root, path);
}

GenderPredictionFile load_gender_predictions(const std::filesystem::path& path) {
  return looks_like_json(path) ? load_predictions_json(path)
                               : load_predictions_csv(path);
}

CandidateCaptionFile load_candidates(const std::filesystem::path& path) {
  const json root = parse_json_file(path);
  if (!root.is_array())
    throw ParseError(fmt::format("'{}': expected a JSON array of {{image_id, caption}}",
                                 path.string()));
  CandidateCaptionFile file;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& rec = root[i];
    if (!rec.is_object() || !rec.contains("image_id") ||
        !rec["image_id"].is_number_integer() || !rec.contains("caption") ||
        !rec["caption"].is_string())
      throw ParseError(fmt::format("'{}': entry {} must be {{image_id, caption}}",
                                   path.string(), i));
    const std::int64_t id = rec["image_id"].get<std::int64_t>();
    if (!file.entries.emplace(id, rec["caption"].get<std::string>()).second)
      throw ValidationError(
          fmt::format("'{}': duplicate image_id {}", path.string(), id));
  }
  return file;
}

void write_candidates(const CandidateCaptionFile& candidates,
                      const std::filesystem::path& path) {
  json root = json::array();
  for (const auto& [id, caption] : candidates.entries)
    root.push_back({{"image_id", id}, {"caption", caption}});
  dump_json_file(root, path);
}

}  // namespace capfair

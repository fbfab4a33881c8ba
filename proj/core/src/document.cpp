#include "mhm/document.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace mhm {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw DocumentError(DocumentError::Kind::Schema, "transform document: " + what);
}

const json& require(const json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

std::string serialize(const TransformSet& transforms) {
  json doc;
  doc["format"] = kTransformFormatName;
  doc["format_version"] = kTransformFormatVersion;
  doc["grid_points"] = transforms.intervals() + 1;
  json channels = json::object();
  for (const ChannelTransform& curve : transforms.channels()) {
    channels[std::string(to_string(curve.channel()))] =
        std::vector<double>(curve.outputs().begin(), curve.outputs().end());
  }
  doc["channels"] = std::move(channels);
  doc["metadata"] = transforms.metadata();
  return doc.dump(2) + "\n";
}

TransformSet deserialize(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw DocumentError(DocumentError::Kind::Malformed,
                        std::string("transform document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");

  const json& format = require(doc, "format");
  if (!format.is_string() || format.get<std::string>() != kTransformFormatName) {
    schema_error("'format' must be \"" + std::string(kTransformFormatName) + "\"");
  }
  const json& version = require(doc, "format_version");
  if (!version.is_number_integer()) schema_error("'format_version' must be an integer");
  if (version.get<long long>() != kTransformFormatVersion) {
    throw DocumentError(DocumentError::Kind::UnsupportedVersion,
                        "transform document version " + version.dump() +
                            " is not supported (expected " +
                            std::to_string(kTransformFormatVersion) + ")");
  }
  const json& grid_points = require(doc, "grid_points");
  if (!grid_points.is_number_unsigned()) schema_error("'grid_points' must be a positive integer");
  const auto points = grid_points.get<std::size_t>();

  const json& channels = require(doc, "channels");
  if (!channels.is_object()) schema_error("'channels' must be an object");

  auto read_channel = [&](Channel c) {
    const std::string name(to_string(c));
    const auto it = channels.find(name);
    if (it == channels.end()) schema_error("missing channel '" + name + "'");
    if (!it->is_array()) schema_error("channel '" + name + "' must be an array");
    std::vector<double> y;
    y.reserve(it->size());
    for (const json& v : *it) {
      if (!v.is_number()) schema_error("channel '" + name + "' must contain only numbers");
      y.push_back(v.get<double>());
    }
    if (y.size() != points) {
      schema_error("channel '" + name + "' has " + std::to_string(y.size()) +
                   " values but grid_points is " + std::to_string(points));
    }
    try {
      return ChannelTransform(c, std::move(y));
    } catch (const TransformInvariantError& e) {
      throw DocumentError(DocumentError::Kind::InvariantViolation, e.what());
    }
  };

  TransformSet::Metadata metadata;
  if (const auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) schema_error("'metadata' must be an object");
    for (const auto& [key, value] : it->items()) {
      metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return TransformSet({read_channel(Channel::Cyan), read_channel(Channel::Magenta),
                       read_channel(Channel::Yellow)},
                      std::move(metadata));
}

void save_transform(const std::filesystem::path& path, const TransformSet& transforms) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << serialize(transforms);
  if (!out) throw Error("failed writing " + path.string());
}

TransformSet load_transform(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

}  // namespace mhm

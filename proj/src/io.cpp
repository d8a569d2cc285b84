#include "stockseq/io.hpp"

#include <fstream>
#include <sstream>

#include "stockseq/errors.hpp"

namespace stockseq::io {

Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational::parse(std::to_string(v.get<std::uint64_t>()));
    return Rational::parse(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InvalidInstance(std::string("bad rational: ") + e.what());
    }
  }
  throw InvalidInstance("numbers must be integers or \"p/q\" strings, got " + v.dump());
}

namespace {

Values values_from(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInstance(std::string("instance is missing \"") + key + "\"");
  const Json& arr = doc.at(key);
  if (!arr.is_array()) throw InvalidInstance(std::string("\"") + key + "\" must be an array");
  Values out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(rational_from_json(v));
  return out;
}

Values in_user_order(const Values& sorted, const std::vector<std::size_t>& origin) {
  Values out(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) out[origin[i]] = sorted[i];
  return out;
}

Permutation mapped(const Permutation& p, const std::vector<std::size_t>& origin) {
  Permutation out;
  out.reserve(p.size());
  for (std::size_t i : p) out.push_back(origin.at(i));
  return out;
}

}  // namespace

AnyInstance parse_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInstance(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInstance("instance must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) throw InvalidInstance("instance needs a string \"kind\"");
  const auto kind = parse_kind(doc.at("kind").get<std::string>());
  if (!kind) throw InvalidInstance("unknown instance kind " + doc.at("kind").dump());
  Values x = values_from(doc, "x");
  Values y = values_from(doc, "y");
  switch (*kind) {
    case InstanceKind::Alternating:
      return AlternatingInstance(std::move(x), std::move(y));
    case InstanceKind::Gasoline:
      return GasolineInstance(std::move(x), std::move(y));
    case InstanceKind::Slated: {
      if (!doc.contains("slots") || !doc.at("slots").is_string()) {
        throw InvalidInstance("slated instance needs a string \"slots\"");
      }
      return SlatedInstance(std::move(x), std::move(y), parse_slots(doc.at("slots").get<std::string>()));
    }
  }
  throw InvalidInstance("unknown instance kind");
}

AnyInstance read_instance_file(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

Json rational_array(std::span<const Rational> values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.to_string());
  return arr;
}

std::string write_instance(const AnyInstance& inst) {
  Json doc;
  doc["kind"] = std::string(kind_name(kind_of(inst)));
  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, GasolineInstance>) {
          doc["x"] = rational_array(in_user_order(i.x(), i.x_origin()));
          doc["y"] = rational_array(i.y());
        } else {
          doc["x"] = rational_array(in_user_order(i.x(), i.x_origin()));
          doc["y"] = rational_array(in_user_order(i.y(), i.y_origin()));
        }
        if constexpr (std::is_same_v<T, SlatedInstance>) doc["slots"] = format_slots(i.slots());
      },
      inst);
  return doc.dump() + "\n";
}

Arrangement to_user_indices(const AnyInstance& inst, const Arrangement& sorted) {
  return std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, GasolineInstance>) {
          return Arrangement{mapped(sorted.sigma, i.x_origin()), sorted.nu};
        } else {
          return Arrangement{mapped(sorted.sigma, i.x_origin()), mapped(sorted.nu, i.y_origin())};
        }
      },
      inst);
}

Json result_json(const AnyInstance& inst, std::string_view algorithm, const Arrangement& sorted,
                 const StockProfile& profile) {
  const Arrangement user = to_user_indices(inst, sorted);
  Json doc;
  doc["kind"] = std::string(kind_name(kind_of(inst)));
  doc["algorithm"] = std::string(algorithm);
  doc["arrangement"] = {{"sigma", user.sigma}, {"nu", user.nu}};
  doc["beta"] = profile.beta.to_string();
  doc["alpha"] = profile.alpha.to_string();
  doc["eta"] = profile.eta.to_string();
  doc["feasible"] = profile.feasible;
  doc["prefix_values"] = rational_array(profile.prefix_values);
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInstance("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace stockseq::io

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stockseq/model.hpp"

// Instance and result files. Numbers are read as JSON integers or "p/q"
// strings and always written as strings, so nothing passes through floating
// point. Writers are canonical: one line, fixed key order, trailing newline.
namespace stockseq::io {

using Json = nlohmann::ordered_json;

/// Throws InvalidInstance on malformed documents or invariant violations.
[[nodiscard]] AnyInstance parse_instance(std::string_view text);
[[nodiscard]] AnyInstance read_instance_file(const std::filesystem::path& path);

/// x and y in the caller's original order.
[[nodiscard]] std::string write_instance(const AnyInstance& inst);

[[nodiscard]] Json rational_array(std::span<const Rational> values);
[[nodiscard]] Rational rational_from_json(const Json& v);

/// Sorted-index arrangement to the caller's original job indices.
[[nodiscard]] Arrangement to_user_indices(const AnyInstance& inst, const Arrangement& sorted);

/// {"kind","algorithm","arrangement":{"sigma","nu"},"beta","alpha","eta",
///  "feasible","prefix_values"} with user indices.
[[nodiscard]] Json result_json(const AnyInstance& inst, std::string_view algorithm, const Arrangement& sorted,
                               const StockProfile& profile);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace stockseq::io

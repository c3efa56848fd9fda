#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace semiarc {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Sorted keys, no whitespace. Certificates never contain floats.
std::string canonical_dump(const json& j);

/// Adds "signature": FNV-1a of the canonical dump of everything else.
json sign(json j);
/// Throws MalformedCertificate when the signature is missing or wrong.
void check_signature(const json& j);

/// $SEMIARC_STORE, or ./semiarc-store when unset.
std::filesystem::path store_root();
/// <root>/<fnv of canonical key>.json
std::filesystem::path store_path(const json& key);
/// Atomic replace; concurrent writers are serialized.
void store_write(const json& key, const json& cert);
std::optional<json> store_read(const json& key);

}  // namespace semiarc

#include "semiarc/certificate.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>

#include "semiarc/errors.hpp"

namespace semiarc {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 15];
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(); }

json sign(json j) {
  j.erase("signature");
  const auto sig = hex64(fnv1a64(canonical_dump(j)));
  j["signature"] = sig;
  return j;
}

void check_signature(const json& j) {
  if (!j.is_object() || !j.contains("signature") || !j["signature"].is_string()) {
    throw Error(ErrorKind::MalformedCertificate, "certificate has no signature");
  }
  json body = j;
  body.erase("signature");
  if (hex64(fnv1a64(canonical_dump(body))) != j["signature"].get<std::string>()) {
    throw Error(ErrorKind::MalformedCertificate, "certificate signature does not match its contents");
  }
}

std::filesystem::path store_root() {
  if (const char* env = std::getenv("SEMIARC_STORE"); env && *env) return env;
  return "semiarc-store";
}

std::filesystem::path store_path(const json& key) {
  return store_root() / (hex64(fnv1a64(canonical_dump(key))) + ".json");
}

namespace {
std::mutex store_mutex;
}

void store_write(const json& key, const json& cert) {
  std::lock_guard lock(store_mutex);
  const auto path = store_path(key);
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << cert.dump(1) << '\n';
    if (!out) throw Error(ErrorKind::MalformedCertificate, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<json> store_read(const json& key) {
  std::lock_guard lock(store_mutex);
  const auto path = store_path(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedCertificate, path.string() + ": " + e.what());
  }
  check_signature(j);
  return j;
}

}  // namespace semiarc

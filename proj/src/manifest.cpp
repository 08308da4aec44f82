#include "adsel/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>

#include "adsel/types.hpp"
#include "adsel/version.hpp"

namespace adsel {

namespace {

std::string digest_to_hex(const unsigned char* digest, unsigned len) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

struct Sha256 {
    EVP_MD_CTX* ctx;
    Sha256() : ctx(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr); }
    ~Sha256() { EVP_MD_CTX_free(ctx); }
    void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx, data, n); }
    std::string hex() {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned len = 0;
        EVP_DigestFinal_ex(ctx, digest, &len);
        return digest_to_hex(digest, len);
    }
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file for hashing: " + path.string());
    Sha256 h;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

nlohmann::json make_manifest(
    const nlohmann::json& config,
    const std::vector<std::pair<std::string, std::filesystem::path>>& inputs,
    const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["tool"] = "adsel";
    m["version"] = kVersion;
    m["created_utc"] = utc_timestamp();
    m["config"] = config;
    m["config_sha256"] = sha256_hex(config.dump());
    nlohmann::json in = nlohmann::json::object();
    for (const auto& [name, path] : inputs)
        in[name] = {{"path", path.string()}, {"sha256", sha256_file(path)}};
    m["inputs"] = in;
    m["outputs"] = outputs;
    return m;
}

void write_manifest(const std::filesystem::path& out_dir, const nlohmann::json& manifest) {
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw ParseError("cannot write manifest in " + out_dir.string());
    out << manifest.dump(2) << '\n';
}

}  // namespace adsel

#include "ostc/manifest.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ostc/text.hpp"

namespace ostc {

std::string digest_bytes(std::string_view bytes) {
    return to_hex(fnv1a64(bytes.data(), bytes.size()));
}

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for digest: " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    const std::string s = buf.str();
    return digest_bytes(s);
}

std::int64_t manifest_timestamp() {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        try {
            return parse_long(epoch, "SOURCE_DATE_EPOCH");
        } catch (const std::invalid_argument&) {
            return 0;
        }
    }
    return 0;
}

void RunManifest::add_file_digest(const std::string& label,
                                  const std::filesystem::path& path) {
    input_digests.emplace_back(label, digest_file(path));
}

void RunManifest::write(std::ostream& out) const {
    out << "ostcolor-manifest 1\n";
    out << "version " << kToolVersion << "\n";
    out << "command " << command << "\n";
    if (seed) out << "seed " << *seed << "\n";
    for (const auto& [label, hex] : input_digests)
        out << "digest " << label << ' ' << hex << "\n";
    out << "timestamp " << timestamp << "\n";
}

void RunManifest::write(const std::filesystem::path& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write manifest: " + path.string());
    write(f);
}

}  // namespace ostc

#include <algorithm>
#include <memory>

#include <openssl/evp.h>

#include "coderet/errors.hpp"
#include "coderet/persistence.hpp"

namespace coderet {

namespace {

struct DigestDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw_runtime("SHA-256 unavailable");
  }
  void update(std::string_view data) {
    if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1) throw_runtime("SHA-256 update failed");
  }
  std::string hex() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), digest, &length) != 1) throw_runtime("SHA-256 final failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
      out += kHex[digest[i] >> 4];
      out += kHex[digest[i] & 0xf];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, DigestDeleter> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data);
  return h.hex();
}

std::string corpus_fingerprint(const std::filesystem::path& root,
                               const std::vector<std::filesystem::path>& relative_files) {
  std::vector<std::string> ids;
  for (const auto& f : relative_files) ids.push_back(f.generic_string());
  std::sort(ids.begin(), ids.end());
  Sha256 h;
  for (const auto& id : ids) {
    h.update(id);
    h.update(std::string_view("\0", 1));
    h.update(sha256_hex(read_text_file(root / id)));
    h.update("\n");
  }
  return h.hex();
}

}  // namespace coderet

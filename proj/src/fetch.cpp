#include "actnext/fetch.hpp"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <unordered_set>

#include "actnext/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace actnext {

namespace {

constexpr std::int64_t kPageSize = 50;

// splits "http://host:port/some/path" into client base and path
void split_endpoint(const std::string& endpoint, std::string& base, std::string& path) {
  auto scheme = endpoint.find("://");
  if (scheme == std::string::npos) throw UsageError("endpoint must include a scheme: " + endpoint);
  auto slash = endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) {
    base = endpoint;
    path = "/";
  } else {
    base = endpoint.substr(0, slash);
    path = endpoint.substr(slash);
  }
}

std::string sanitize_id(const std::string& id) {
  std::string out;
  for (char c : id)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'
                      ? c
                      : '_');
  return out.empty() ? "doc" : out;
}

}  // namespace

FetchResult fetch_documents(const std::string& endpoint, const std::string& query,
                            std::int64_t limit, const std::string& out_dir) {
  if (limit < 1) throw UsageError("fetch: limit must be >= 1");

  fs::create_directories(out_dir);
  fs::path manifest_path = fs::path(out_dir) / "manifest.tsv";

  std::unordered_set<std::string> known;
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    std::string line;
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab != std::string::npos) known.insert(line.substr(0, tab));
    }
  }

  std::string base, path;
  split_endpoint(endpoint, base, path);
  httplib::Client client(base);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(10, 0);

  std::ofstream manifest(manifest_path, std::ios::app);
  if (!manifest) throw UsageError("cannot open manifest for append: " + manifest_path.string());

  FetchResult result;
  std::int64_t seen = 0;
  while (seen < limit) {
    std::int64_t page = std::min(kPageSize, limit - seen);
    httplib::Params params{{"query", query},
                           {"offset", std::to_string(seen)},
                           {"limit", std::to_string(page)}};
    auto res = client.Get(path, params, httplib::Headers{});
    if (!res)
      throw RetriableError("fetch: cannot reach " + endpoint + " (" +
                           httplib::to_string(res.error()) + ")");
    if (res->status != 200)
      throw RetriableError("fetch: " + endpoint + " returned status " +
                           std::to_string(res->status));

    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.contains("documents") || !body["documents"].is_array())
      throw RetriableError("fetch: malformed response body from " + endpoint);

    const auto& docs = body["documents"];
    for (const auto& d : docs) {
      if (!d.is_object() || !d.contains("id") || !d.contains("text") ||
          !d["id"].is_string() || !d["text"].is_string()) {
        ++result.warnings;
        continue;
      }
      std::string id = d["id"].get<std::string>();
      if (known.count(id)) {
        ++result.skipped;
        continue;
      }
      std::string fname = sanitize_id(id) + ".txt";
      for (int suffix = 2; fs::exists(fs::path(out_dir) / fname); ++suffix)
        fname = sanitize_id(id) + "_" + std::to_string(suffix) + ".txt";
      std::ofstream doc(fs::path(out_dir) / fname, std::ios::binary);
      doc << d["text"].get<std::string>();
      doc.close();
      manifest << id << '\t' << fname << '\n';
      manifest.flush();
      known.insert(id);
      ++result.fetched;
    }
    seen += static_cast<std::int64_t>(docs.size());
    if (static_cast<std::int64_t>(docs.size()) < page) break;  // exhausted
  }
  return result;
}

}  // namespace actnext

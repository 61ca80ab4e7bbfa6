#pragma once

#include <cstdint>
#include <string>

namespace actnext {

struct FetchResult {
  std::int64_t fetched = 0;   // newly written documents
  std::int64_t skipped = 0;   // already present in the manifest
  std::int64_t warnings = 0;  // malformed entries skipped
};

// Pulls up to `limit` documents from a document service and writes them to
// `out_dir` (one .txt per document plus manifest.tsv with id<TAB>filename
// lines, the layout ingest_directory() reads).
//
// Protocol: GET <endpoint>?query=<q>&offset=<k>&limit=<n> returning
// {"documents": [{"id": "...", "text": "..."}], "total": N}.
//
// Re-running the same fetch is idempotent: ids already in the manifest are
// skipped. Connection failures and unparseable bodies raise RetriableError;
// documents written before the failure stay in the manifest. Malformed
// per-document entries are skipped and counted in `warnings`.
FetchResult fetch_documents(const std::string& endpoint, const std::string& query,
                            std::int64_t limit, const std::string& out_dir);

}  // namespace actnext

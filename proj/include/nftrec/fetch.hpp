#pragma once

#include "nftrec/error.hpp"
#include "nftrec/model.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nftrec {

using Duration = std::chrono::nanoseconds;

/// Time source for the fetcher. Tests substitute VirtualClock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual Duration now() = 0;
    virtual void sleep_for(Duration d) = 0;
};

class SteadyClock final : public Clock {
public:
    Duration now() override;
    void sleep_for(Duration d) override;
};

/// Deterministic clock: sleeping advances time instantly.
class VirtualClock final : public Clock {
public:
    Duration now() override { return now_; }
    void sleep_for(Duration d) override {
        if (d > Duration::zero()) now_ += d;
    }
    void advance(Duration d) { now_ += d; }

private:
    Duration now_{0};
};

/// Spaces consecutive request starts at least 1/rate seconds apart.
class RateLimiter {
public:
    RateLimiter(double requests_per_second, Clock& clock);

    /// Blocks until the next request may start, then records its start time.
    void acquire();

    Duration interval() const noexcept { return interval_; }

private:
    Clock& clock_;
    Duration interval_;
    std::optional<Duration> last_start_;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpHeaders = std::multimap<std::string, std::string>;

/// GET-only HTTP client. Returns nullopt on network failure or timeout.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual std::optional<HttpResponse> get(const std::string& url, const HttpHeaders& headers) = 0;
};

/// cpp-httplib backed transport for http:// and https:// URLs.
class HttplibTransport final : public HttpTransport {
public:
    explicit HttplibTransport(std::chrono::seconds timeout = std::chrono::seconds(30)) : timeout_(timeout) {}
    std::optional<HttpResponse> get(const std::string& url, const HttpHeaders& headers) override;

private:
    std::chrono::seconds timeout_;
};

struct FetchConfig {
    std::string api_base;
    std::string contract;
    int page_size = 50;
    double rate_limit = 1.0;
    int max_retries = 5;
    std::optional<std::string> api_key;
    Duration backoff_base = std::chrono::seconds(1);

    /// Throws DomainError for out-of-range values and ParseError for a
    /// malformed contract.
    void validate() const;

    /// URL of page `n` (0-based), offset pagination over the assets endpoint.
    std::string page_url(int page) const;
};

inline constexpr const char* kApiKeyHeader = "X-API-KEY";
inline constexpr const char* kApiKeyEnv = "RECSYS_API_KEY";

struct RawSnapshot {
    std::string fetched_at;  // UTC, ISO 8601
    std::string request_url;
    std::string body;
};

/// Directory layout: <dir>/raw/page-<n>.json holds the verbatim body,
/// <dir>/raw/page-<n>.meta.json its URL and timestamp, and <dir>/cursor.json
/// {"last_page": n} the last page that was persisted and parsed.
class SnapshotStore {
public:
    explicit SnapshotStore(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }

    void persist(int page, const RawSnapshot& snap) const;
    RawSnapshot load(int page) const;
    std::filesystem::path page_path(int page) const;

    std::optional<int> cursor() const;
    void set_cursor(int last_page) const;

private:
    std::filesystem::path dir_;
};

/// Raised when fetching aborts. `last_page` is the resume cursor, or -1
/// when no page was completed.
class FetchError : public Error {
public:
    FetchError(const std::string& what, int last_page) : Error(what), last_page_(last_page) {}
    int last_page() const noexcept { return last_page_; }

private:
    int last_page_;
};

struct FetchStats {
    int pages = 0;
    int requests = 0;
    int backoffs = 0;
};

/// Paginates the assets endpoint until a short page, persisting every
/// response before parsing it. Resumes after the store's cursor when one
/// exists.
Collection fetch_assets(const FetchConfig& cfg, const SnapshotStore& store, HttpTransport& transport,
                        Clock& clock, FetchStats* stats = nullptr);

/// Re-parses persisted pages 0..cursor.
Collection replay_snapshots(const SnapshotStore& store);

} // namespace nftrec

#include "nftrec/fetch.hpp"

#include "nftrec/ingest.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cmath>
#include <ctime>
#include <thread>

namespace nftrec {

namespace fs = std::filesystem;
using nlohmann::json;

Duration SteadyClock::now() { return std::chrono::steady_clock::now().time_since_epoch(); }

void SteadyClock::sleep_for(Duration d) {
    if (d > Duration::zero()) std::this_thread::sleep_for(d);
}

RateLimiter::RateLimiter(double requests_per_second, Clock& clock) : clock_(clock) {
    if (!(requests_per_second > 0.0) || !std::isfinite(requests_per_second)) {
        throw DomainError("rate limit must be a positive number of requests per second");
    }
    interval_ = Duration(static_cast<Duration::rep>(std::ceil(1e9 / requests_per_second)));
}

void RateLimiter::acquire() {
    if (last_start_) {
        auto earliest = *last_start_ + interval_;
        auto now = clock_.now();
        if (now < earliest) clock_.sleep_for(earliest - now);
    }
    last_start_ = clock_.now();
}

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // begins with '/'
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ParseError("URL without scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string utc_timestamp() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::optional<HttpResponse> HttplibTransport::get(const std::string& url, const HttpHeaders& headers) {
    auto [origin, path] = split_url(url);
    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);
    httplib::Headers h(headers.begin(), headers.end());
    auto res = client.Get(path, h);
    if (!res) return std::nullopt;
    return HttpResponse{res->status, res->body};
}

void FetchConfig::validate() const {
    if (page_size < 1 || page_size > 50) {
        throw DomainError("page size must be in [1, 50], got " + std::to_string(page_size));
    }
    if (!(rate_limit > 0.0) || !std::isfinite(rate_limit)) {
        throw DomainError("rate limit must be positive");
    }
    if (max_retries < 0) throw DomainError("max retries must be non-negative");
    if (api_base.find("://") == std::string::npos) {
        throw DomainError("api base must be an absolute http(s) URL, got '" + api_base + "'");
    }
    canonical_contract(contract);
}

std::string FetchConfig::page_url(int page) const {
    auto base = api_base;
    while (!base.empty() && base.back() == '/') base.pop_back();
    return base + "/assets?asset_contract_address=" + to_lower(contract) +
           "&order_direction=asc&offset=" + std::to_string(static_cast<long long>(page) * page_size) +
           "&limit=" + std::to_string(page_size);
}

SnapshotStore::SnapshotStore(fs::path dir) : dir_(std::move(dir)) {}

fs::path SnapshotStore::page_path(int page) const {
    return dir_ / "raw" / ("page-" + std::to_string(page) + ".json");
}

void SnapshotStore::persist(int page, const RawSnapshot& snap) const {
    std::error_code ec;
    fs::create_directories(dir_ / "raw", ec);
    if (ec) throw IoError((dir_ / "raw").string() + ": " + ec.message());
    write_file(page_path(page), snap.body);
    json meta = {{"fetched_at", snap.fetched_at}, {"request_url", snap.request_url}};
    write_file(dir_ / "raw" / ("page-" + std::to_string(page) + ".meta.json"), meta.dump(2) + "\n");
}

RawSnapshot SnapshotStore::load(int page) const {
    RawSnapshot snap;
    snap.body = read_file(page_path(page));
    auto meta_path = dir_ / "raw" / ("page-" + std::to_string(page) + ".meta.json");
    if (fs::exists(meta_path)) {
        auto meta = json::parse(read_file(meta_path), nullptr, false);
        if (meta.is_object()) {
            snap.fetched_at = meta.value("fetched_at", "");
            snap.request_url = meta.value("request_url", "");
        }
    }
    return snap;
}

std::optional<int> SnapshotStore::cursor() const {
    auto path = dir_ / "cursor.json";
    if (!fs::exists(path)) return std::nullopt;
    auto doc = json::parse(read_file(path), nullptr, false);
    if (!doc.is_object() || !doc.contains("last_page") || !doc["last_page"].is_number_integer()) {
        throw ParseError(path.string() + ": expected {\"last_page\": n}");
    }
    return doc["last_page"].get<int>();
}

void SnapshotStore::set_cursor(int last_page) const {
    write_file(dir_ / "cursor.json", json({{"last_page", last_page}}).dump() + "\n");
}

namespace {

std::vector<Token> parse_page(const std::string& body, const SnapshotStore& store, int page,
                              std::size_t first_record) {
    return parse_tokens(body, InputFormat::OpenSeaAssets, store.page_path(page).string(), first_record);
}

} // namespace

Collection fetch_assets(const FetchConfig& cfg, const SnapshotStore& store, HttpTransport& transport,
                        Clock& clock, FetchStats* stats) {
    cfg.validate();
    FetchStats local;
    FetchStats& st = stats ? *stats : local;

    std::vector<Token> tokens;
    int page = 0;
    if (auto cur = store.cursor()) {
        bool finished = false;
        for (int p = 0; p <= *cur; ++p) {
            auto page_tokens = parse_page(store.load(p).body, store, p, tokens.size());
            finished = page_tokens.size() < static_cast<std::size_t>(cfg.page_size);
            std::move(page_tokens.begin(), page_tokens.end(), std::back_inserter(tokens));
        }
        if (finished) return Collection(std::nullopt, std::move(tokens));
        page = *cur + 1;
    }

    HttpHeaders headers{{"Accept", "application/json"}};
    if (cfg.api_key) headers.emplace(kApiKeyHeader, *cfg.api_key);

    RateLimiter limiter(cfg.rate_limit, clock);
    for (;; ++page) {
        const auto url = cfg.page_url(page);
        std::optional<HttpResponse> response;
        for (int retries = 0;; ++retries) {
            limiter.acquire();
            ++st.requests;
            response = transport.get(url, headers);
            bool retryable = !response || response->status == 429;
            if (!retryable) break;
            if (retries == cfg.max_retries) {
                throw FetchError(url + ": " + (response ? "HTTP 429" : std::string("network error")) +
                                     " after " + std::to_string(retries) + " retries",
                                 page - 1);
            }
            ++st.backoffs;
            clock.sleep_for(cfg.backoff_base * (1LL << std::min(retries, 30)));
        }
        if (response->status < 200 || response->status >= 300) {
            throw FetchError(url + ": HTTP " + std::to_string(response->status), page - 1);
        }

        store.persist(page, RawSnapshot{utc_timestamp(), url, response->body});
        auto page_tokens = parse_page(response->body, store, page, tokens.size());
        store.set_cursor(page);
        ++st.pages;

        bool short_page = page_tokens.size() < static_cast<std::size_t>(cfg.page_size);
        std::move(page_tokens.begin(), page_tokens.end(), std::back_inserter(tokens));
        if (short_page) break;
    }
    return Collection(std::nullopt, std::move(tokens));
}

Collection replay_snapshots(const SnapshotStore& store) {
    auto cur = store.cursor();
    if (!cur) throw ParseError(store.dir().string() + ": no cursor.json, nothing to replay");
    std::vector<Token> tokens;
    for (int p = 0; p <= *cur; ++p) {
        auto page_tokens = parse_page(store.load(p).body, store, p, tokens.size());
        std::move(page_tokens.begin(), page_tokens.end(), std::back_inserter(tokens));
    }
    return Collection(std::nullopt, std::move(tokens));
}

} // namespace nftrec
